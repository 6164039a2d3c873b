#pragma once

#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "essencery/graph.hpp"
#include "essencery/kernel.hpp"
#include "essencery/lint.hpp"

namespace essencery::json_codec {

/// Structured representation of a graph:
///   {"id", "title", "revision",
///    "nodes":     [{"id", "kind", "name", "x", "y", "area"?}],
///    "notes":     [{"id", "text", "x", "y"}],
///    "relations": [{"id", "source", "target", "label"?, "directed"}],
///    "cards":     [{"owner", "description", "items": [], "links": []}],
///    "bindings":  [{"owner", "target": "kernel.<category>.<Name>"}]}
nlohmann::json to_json(const Graph& graph);

/// Shape errors (missing fields, wrong types, unknown kinds, repeated ids
/// within a list) throw JsonShapeError. Referential integrity is not
/// checked here; see structural_violations.
Graph graph_from_json(const nlohmann::json& value);

nlohmann::json to_json(const Kernel& kernel);
nlohmann::json to_json(const lint::Diagnostic& diagnostic);
nlohmann::json to_json(const std::vector<lint::Diagnostic>& diagnostics);

class JsonShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace essencery::json_codec
