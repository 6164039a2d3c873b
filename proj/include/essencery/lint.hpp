#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "essencery/graph.hpp"
#include "essencery/kernel.hpp"

namespace essencery::lint {

enum class Severity { Error, Warning };

std::string_view to_string(Severity severity);

/// Rule table:
///   E001 relation endpoint missing         W001 empty node name
///   E002 duplicate id                      W002 same kind and name as another node
///   E003 binding path not in kernel        W003 isolated node (no relations, unbound)
///   E004 binding category vs node kind     W004 empty graph
///                                          W005 node area differs from bound element's area
struct Diagnostic {
  std::string code;
  Severity severity = Severity::Error;
  std::string subject;  // element id or "graph"
  std::string message;
  bool operator==(const Diagnostic&) const = default;
};

/// All findings, ordered by code then subject. Never throws.
std::vector<Diagnostic> lint(const Graph& graph, const Kernel& kernel);

bool has_errors(const std::vector<Diagnostic>& diagnostics);
bool has_warnings(const std::vector<Diagnostic>& diagnostics);

/// `<code> <severity> <subject>: <message>`
std::string format_line(const Diagnostic& diagnostic);

}  // namespace essencery::lint
