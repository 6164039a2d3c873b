#include "essencery/session.hpp"

namespace essencery {

void EditSession::apply(const Command& command) {
  auto inverse = apply_command(graph_, command);
  undo_.push_back({command, std::move(inverse)});
  redo_.clear();
}

HistoryStep EditSession::undo() {
  if (undo_.empty()) return HistoryStep::NothingToUndo;
  Entry entry = std::move(undo_.back());
  undo_.pop_back();
  // Inverse steps are replayed on a copy so a failure cannot leave the graph
  // half-restored.
  Graph restored = graph_;
  for (const auto& step : entry.inverse) apply_command(restored, step);
  graph_ = std::move(restored);
  redo_.push_back(std::move(entry.forward));
  return HistoryStep::Applied;
}

HistoryStep EditSession::redo() {
  if (redo_.empty()) return HistoryStep::NothingToRedo;
  auto inverse = apply_command(graph_, redo_.back());
  undo_.push_back({std::move(redo_.back()), std::move(inverse)});
  redo_.pop_back();
  return HistoryStep::Applied;
}

void EditSession::move_nodes(std::set<std::string> ids, Position delta) {
  apply(cmd::MoveNodes{std::move(ids), delta});
}

void EditSession::substitute_kind(const std::string& id, NodeKind kind) { apply(cmd::SetKind{id, kind}); }

EditSession new_graph(std::string title) {
  Graph graph;
  graph.id = generate_document_id();
  graph.title = std::move(title);
  return EditSession(std::move(graph));
}

}  // namespace essencery
