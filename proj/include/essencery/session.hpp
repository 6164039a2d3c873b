#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "essencery/command.hpp"
#include "essencery/graph.hpp"

namespace essencery {

enum class HistoryStep { Applied, NothingToUndo, NothingToRedo };

/// A graph plus unbounded undo/redo stacks. Single writer; the stacks live
/// only as long as the session.
class EditSession {
 public:
  EditSession() = default;
  explicit EditSession(Graph graph) : graph_(std::move(graph)) {}

  const Graph& graph() const noexcept { return graph_; }

  /// Throws CommandError; a rejected command changes neither the graph nor
  /// the stacks.
  void apply(const Command& command);

  HistoryStep undo();
  HistoryStep redo();

  void move_nodes(std::set<std::string> ids, Position delta);
  void substitute_kind(const std::string& id, NodeKind kind);

  bool can_undo() const noexcept { return !undo_.empty(); }
  bool can_redo() const noexcept { return !redo_.empty(); }
  std::size_t undo_depth() const noexcept { return undo_.size(); }
  std::size_t redo_depth() const noexcept { return redo_.size(); }

 private:
  struct Entry {
    Command forward;
    std::vector<Command> inverse;
  };

  Graph graph_;
  std::vector<Entry> undo_;
  std::vector<Command> redo_;
};

/// Empty graph at revision 0 with a generated document id.
EditSession new_graph(std::string title);

}  // namespace essencery
