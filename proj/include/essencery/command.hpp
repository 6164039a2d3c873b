#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "essencery/graph.hpp"

namespace essencery {

namespace cmd {

struct AddNode {
  Node node;
  bool operator==(const AddNode&) const = default;
};
/// Cascades to incident relations, the node's card and its binding.
struct RemoveNode {
  std::string id;
  bool operator==(const RemoveNode&) const = default;
};
struct RenameNode {
  std::string id;
  std::string name;
  bool operator==(const RenameNode&) const = default;
};
/// Translates nodes and notes together; one undo entry for the whole set.
struct MoveNodes {
  std::set<std::string> ids;
  Position delta;
  bool operator==(const MoveNodes&) const = default;
};
/// Kind substitution. A binding the new kind cannot carry is dropped.
struct SetKind {
  std::string id;
  NodeKind kind = NodeKind::Alpha;
  bool operator==(const SetKind&) const = default;
};
struct AddRelation {
  Relation relation;
  bool operator==(const AddRelation&) const = default;
};
struct RemoveRelation {
  std::string id;
  bool operator==(const RemoveRelation&) const = default;
};
struct SetRelationLabel {
  std::string id;
  std::optional<std::string> label;
  bool operator==(const SetRelationLabel&) const = default;
};
struct AddNote {
  TextNote note;
  bool operator==(const AddNote&) const = default;
};
struct SetNoteText {
  std::string id;
  std::string text;
  bool operator==(const SetNoteText&) const = default;
};
struct RemoveNote {
  std::string id;
  bool operator==(const RemoveNote&) const = default;
};
/// Creates or replaces the card owned by `card.owner`.
struct SetCard {
  Card card;
  bool operator==(const SetCard&) const = default;
};
struct RemoveCard {
  std::string owner;
  bool operator==(const RemoveCard&) const = default;
};
/// Creates or replaces the binding owned by `binding.owner`.
struct SetBinding {
  Binding binding;
  bool operator==(const SetBinding&) const = default;
};
struct RemoveBinding {
  std::string owner;
  bool operator==(const RemoveBinding&) const = default;
};

}  // namespace cmd

using Command = std::variant<cmd::AddNode, cmd::RemoveNode, cmd::RenameNode, cmd::MoveNodes, cmd::SetKind,
                             cmd::AddRelation, cmd::RemoveRelation, cmd::SetRelationLabel, cmd::AddNote,
                             cmd::SetNoteText, cmd::RemoveNote, cmd::SetCard, cmd::RemoveCard, cmd::SetBinding,
                             cmd::RemoveBinding>;

std::string_view command_name(const Command& command);

class CommandError : public std::runtime_error {
 public:
  enum class Code { UnknownId, DuplicateId, MissingEndpoint, InvalidValue };

  CommandError(Code code, std::string message) : std::runtime_error(std::move(message)), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

/// Applies `command` to `graph` and returns the commands that, applied in
/// order, restore the previous graph exactly. Throws CommandError and leaves
/// `graph` untouched when the command is rejected.
std::vector<Command> apply_command(Graph& graph, const Command& command);

}  // namespace essencery
