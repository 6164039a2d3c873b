#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "essencery/kernel.hpp"

namespace essencery {

enum class NodeKind { Alpha, ActivitySpace, Activity, WorkProduct, Competency, Pattern };

inline constexpr std::array<NodeKind, 6> kAllNodeKinds = {
    NodeKind::Alpha,       NodeKind::ActivitySpace, NodeKind::Activity,
    NodeKind::WorkProduct, NodeKind::Competency,    NodeKind::Pattern,
};

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view text);

/// Area of concern a node may be tagged with.
enum class Area { Customer, Solution, Endeavor };

inline constexpr std::array<Area, 3> kAllAreas = {Area::Customer, Area::Solution, Area::Endeavor};

std::string_view to_string(Area area);
std::optional<Area> parse_area(std::string_view text);

/// Canvas units, y grows downward.
struct Position {
  std::int32_t x = 0;
  std::int32_t y = 0;
  bool operator==(const Position&) const = default;
};

inline constexpr std::int32_t kCoordinateLimit = 100000;

inline bool in_canvas(Position p) {
  return p.x >= -kCoordinateLimit && p.x <= kCoordinateLimit && p.y >= -kCoordinateLimit &&
         p.y <= kCoordinateLimit;
}

struct Node {
  std::string id;
  NodeKind kind = NodeKind::Alpha;
  std::string name;  // may be empty right after placement
  Position position;
  std::optional<Area> area;
  bool operator==(const Node&) const = default;
};

struct TextNote {
  std::string id;
  std::string text;
  Position position;
  bool operator==(const TextNote&) const = default;
};

struct Relation {
  std::string id;
  std::string source;
  std::string target;
  std::optional<std::string> label;
  bool directed = true;
  bool operator==(const Relation&) const = default;
};

/// Practice card attached to a node.
struct Card {
  std::string owner;
  std::string description;
  std::vector<std::string> items;
  std::vector<std::string> links;  // absolute URLs
  bool operator==(const Card&) const = default;
};

struct Binding {
  std::string owner;
  KernelPath target;
  bool operator==(const Binding&) const = default;
};

/// A graph document. Collections are keyed by id (cards and bindings by owner
/// id) so iteration order is bytewise-ascending and independent of insertion
/// order. Nodes, notes and relations share one id space.
///
/// The struct itself does not enforce referential integrity; EditSession and
/// the parser do. `structural_violations` reports what a hand-built value
/// breaks.
struct Graph {
  std::string id;
  std::string title;
  std::uint64_t revision = 0;
  std::map<std::string, Node> nodes;
  std::map<std::string, TextNote> notes;
  std::map<std::string, Relation> relations;
  std::map<std::string, Card> cards;
  std::map<std::string, Binding> bindings;

  const Node* find_node(std::string_view node_id) const;
  bool has_element(std::string_view element_id) const;
};

/// Equal ignoring document id and revision.
bool structural_equal(const Graph& a, const Graph& b);

struct Violation {
  std::string subject;
  std::string message;
  bool operator==(const Violation&) const = default;
};

/// Every broken graph invariant: id syntax, shared-id clashes, dangling
/// relation endpoints and card/binding owners, coordinate range, UTF-8 and
/// URL validity. Empty for any graph built through EditSession or the parser.
std::vector<Violation> structural_violations(const Graph& graph);

/// `[a-z][a-z0-9_]*`
bool is_valid_id(std::string_view id);

/// scheme ":" rest, no whitespace or control characters; a `//` authority,
/// when present, is non-empty.
bool is_absolute_url(std::string_view url);

/// Kernel category a node of `kind` may bind to; nullopt for kinds that may
/// not bind at all.
std::optional<KernelCategory> bindable_category(NodeKind kind);

inline bool binding_compatible(NodeKind kind, KernelCategory category) {
  return bindable_category(kind) == category;
}

/// Lowest unused `<prefix><n>` for n >= 1 in the shared id space.
std::string fresh_id(const Graph& graph, std::string_view prefix = "n");

/// 8 lowercase hex characters.
std::string generate_document_id();

}  // namespace essencery
