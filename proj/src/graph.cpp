#include "essencery/graph.hpp"

#include <random>
#include <set>

#include "essencery/utf8.hpp"
#include "lexer.hpp"

namespace essencery {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Alpha: return "alpha";
    case NodeKind::ActivitySpace: return "activity_space";
    case NodeKind::Activity: return "activity";
    case NodeKind::WorkProduct: return "work_product";
    case NodeKind::Competency: return "competency";
    case NodeKind::Pattern: return "pattern";
  }
  return "alpha";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) {
  for (const auto kind : kAllNodeKinds) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(Area area) {
  switch (area) {
    case Area::Customer: return "customer";
    case Area::Solution: return "solution";
    case Area::Endeavor: return "endeavor";
  }
  return "customer";
}

std::optional<Area> parse_area(std::string_view text) {
  for (const auto area : kAllAreas) {
    if (to_string(area) == text) return area;
  }
  return std::nullopt;
}

const Node* Graph::find_node(std::string_view node_id) const {
  const auto it = nodes.find(std::string(node_id));
  return it == nodes.end() ? nullptr : &it->second;
}

bool Graph::has_element(std::string_view element_id) const {
  const std::string key(element_id);
  return nodes.count(key) || notes.count(key) || relations.count(key);
}

bool structural_equal(const Graph& a, const Graph& b) {
  return a.title == b.title && a.nodes == b.nodes && a.notes == b.notes && a.relations == b.relations &&
         a.cards == b.cards && a.bindings == b.bindings;
}

bool is_valid_id(std::string_view id) { return detail::is_ident(id); }

bool is_absolute_url(std::string_view url) {
  const auto colon = url.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  const auto scheme = url.substr(0, colon);
  const auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  if (!alpha(scheme[0])) return false;
  for (const char c : scheme) {
    if (!(alpha(c) || (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.')) return false;
  }
  const auto rest = url.substr(colon + 1);
  if (rest.empty()) return false;
  for (const char c : url) {
    const auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || u == 0x7F) return false;
  }
  if (!utf8::valid(url)) return false;
  if (rest.starts_with("//")) {
    const auto authority = rest.substr(2, rest.find_first_of("/?#", 2) - 2);
    if (authority.empty()) return false;
  }
  return true;
}

std::optional<KernelCategory> bindable_category(NodeKind kind) {
  switch (kind) {
    case NodeKind::Alpha: return KernelCategory::Alpha;
    case NodeKind::ActivitySpace: return KernelCategory::Space;
    case NodeKind::Competency: return KernelCategory::Competency;
    default: return std::nullopt;
  }
}

std::vector<Violation> structural_violations(const Graph& graph) {
  std::vector<Violation> out;
  auto report = [&](const std::string& subject, std::string message) {
    out.push_back({subject, std::move(message)});
  };
  if (!utf8::valid(graph.title)) report("graph", "title is not valid UTF-8");

  std::map<std::string, int> id_uses;
  auto check_element = [&](const std::string& key, const std::string& id, std::string_view what) {
    if (key != id) report(id, std::string(what) + " stored under key '" + key + "'");
    if (!is_valid_id(id)) report(id, "invalid " + std::string(what) + " id '" + id + "'");
    ++id_uses[id];
  };
  auto check_position = [&](const std::string& id, Position p) {
    if (!in_canvas(p)) report(id, "position outside canvas bounds");
  };

  for (const auto& [key, node] : graph.nodes) {
    check_element(key, node.id, "node");
    check_position(node.id, node.position);
    if (!utf8::valid(node.name)) report(node.id, "name is not valid UTF-8");
  }
  for (const auto& [key, note] : graph.notes) {
    check_element(key, note.id, "note");
    check_position(note.id, note.position);
    if (!utf8::valid(note.text)) report(note.id, "text is not valid UTF-8");
  }
  for (const auto& [key, rel] : graph.relations) {
    check_element(key, rel.id, "relation");
    if (!graph.nodes.count(rel.source)) report(rel.id, "source '" + rel.source + "' is not a node");
    if (!graph.nodes.count(rel.target)) report(rel.id, "target '" + rel.target + "' is not a node");
    if (rel.label && !utf8::valid(*rel.label)) report(rel.id, "label is not valid UTF-8");
  }
  for (const auto& [id, uses] : id_uses) {
    if (uses > 1) report(id, "id used by " + std::to_string(uses) + " elements");
  }
  for (const auto& [owner, card] : graph.cards) {
    if (owner != card.owner) report(card.owner, "card stored under key '" + owner + "'");
    if (!graph.nodes.count(card.owner)) report(card.owner, "card owner is not a node");
    if (!utf8::valid(card.description)) report(card.owner, "card description is not valid UTF-8");
    for (const auto& item : card.items) {
      if (!utf8::valid(item)) report(card.owner, "card item is not valid UTF-8");
    }
    for (const auto& link : card.links) {
      if (!is_absolute_url(link)) report(card.owner, "card link '" + link + "' is not an absolute URL");
    }
  }
  for (const auto& [owner, binding] : graph.bindings) {
    if (owner != binding.owner) report(binding.owner, "binding stored under key '" + owner + "'");
    if (!graph.nodes.count(binding.owner)) report(binding.owner, "binding owner is not a node");
    if (!detail::is_name(binding.target.name)) report(binding.owner, "binding target name is not an identifier");
  }
  return out;
}

std::string fresh_id(const Graph& graph, std::string_view prefix) {
  for (std::uint64_t n = 1;; ++n) {
    std::string candidate = std::string(prefix) + std::to_string(n);
    if (!graph.has_element(candidate)) return candidate;
  }
}

std::string generate_document_id() {
  static thread_local std::mt19937 rng{std::random_device{}()};
  static constexpr char kHex[] = "0123456789abcdef";
  std::uniform_int_distribution<int> digit(0, 15);
  std::string id(8, '0');
  for (auto& c : id) c = kHex[digit(rng)];
  return id;
}

}  // namespace essencery
