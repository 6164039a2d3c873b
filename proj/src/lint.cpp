#include "essencery/lint.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace essencery::lint {

std::string_view to_string(Severity severity) { return severity == Severity::Error ? "error" : "warning"; }

std::vector<Diagnostic> lint(const Graph& graph, const Kernel& kernel) {
  std::vector<Diagnostic> out;
  auto error = [&](const char* code, std::string subject, std::string message) {
    out.push_back({code, Severity::Error, std::move(subject), std::move(message)});
  };
  auto warn = [&](const char* code, std::string subject, std::string message) {
    out.push_back({code, Severity::Warning, std::move(subject), std::move(message)});
  };

  // E001
  for (const auto& [id, rel] : graph.relations) {
    for (const auto& [end, role] : {std::pair{&rel.source, "source"}, std::pair{&rel.target, "target"}}) {
      if (!graph.nodes.count(*end)) error("E001", id, std::string(role) + " node '" + *end + "' does not exist");
    }
  }

  // E002: nodes, notes and relations share one id space.
  std::map<std::string, int> uses;
  for (const auto& [key, node] : graph.nodes) ++uses[node.id];
  for (const auto& [key, note] : graph.notes) ++uses[note.id];
  for (const auto& [key, rel] : graph.relations) ++uses[rel.id];
  for (const auto& [id, count] : uses) {
    if (count > 1) error("E002", id, "id is used by " + std::to_string(count) + " elements");
  }

  // E003, E004, W005
  for (const auto& [owner, binding] : graph.bindings) {
    const std::string path = binding.target.str();
    const Resolution res = resolve(kernel, binding.target);
    if (!res) {
      std::string why = "binding " + path + " does not resolve in kernel \"" + kernel.title + "\"";
      if (res.found_in_category) why += " (a " + std::string(to_string(*res.found_in_category)) + " has that name)";
      error("E003", owner, why);
    }
    const Node* node = graph.find_node(owner);
    if (!node) continue;
    if (!binding_compatible(node->kind, binding.target.category)) {
      const auto allowed = bindable_category(node->kind);
      error("E004", owner,
            std::string(to_string(node->kind)) + " node cannot bind to a kernel " +
                std::string(to_string(binding.target.category)) +
                (allowed ? " (expected " + std::string(to_string(*allowed)) + ")" : " (this kind may not bind)"));
    }
    if (res && node->area && res.element->area() != to_string(*node->area)) {
      warn("W005", owner,
           "area " + std::string(to_string(*node->area)) + " conflicts with " + path + " in area " +
               res.element->area());
    }
  }

  // W001, W002, W003
  std::map<std::pair<NodeKind, std::string>, std::vector<std::string>> by_name;
  std::set<std::string> connected;
  for (const auto& [id, rel] : graph.relations) {
    connected.insert(rel.source);
    connected.insert(rel.target);
  }
  for (const auto& [id, node] : graph.nodes) {
    if (node.name.empty()) {
      warn("W001", id, "node has no name");
    } else {
      by_name[{node.kind, node.name}].push_back(id);
    }
    if (!connected.count(id) && !graph.bindings.count(id)) warn("W003", id, "node has no relations and no binding");
  }
  for (const auto& [key, ids] : by_name) {
    if (ids.size() < 2) continue;
    for (const auto& id : ids) {
      warn("W002", id,
           std::to_string(ids.size()) + " " + std::string(to_string(key.first)) + " nodes are named \"" + key.second +
               "\"");
    }
  }

  if (graph.nodes.empty()) warn("W004", "graph", "graph has no nodes");

  std::stable_sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.code, a.subject) < std::tie(b.code, b.subject);
  });
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

bool has_warnings(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Warning; });
}

std::string format_line(const Diagnostic& d) {
  return d.code + " " + std::string(to_string(d.severity)) + " " + d.subject + ": " + d.message;
}

}  // namespace essencery::lint
