#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "essencery/graph.hpp"
#include "essencery/parse_error.hpp"

namespace essencery::essfmt {

/// Parses a `.ess` document. The result satisfies every graph invariant;
/// referential problems (a relation to an undeclared node, a duplicate id)
/// are reported as ParseError at the offending token. First error wins.
Graph parse(std::string_view text);

/// Canonical text: meta, then nodes, notes, relations (each by id), cards,
/// bindings (each by owner id); two-space indent, one statement per line,
/// LF line endings, trailing newline, no comments.
std::string print(const Graph& graph);

struct FormatResult {
  std::string canonical;
  bool changed = false;  // canonical text differs from the file bytes
};

/// Parses `path` and returns its canonical form. With `write_in_place` the
/// file is atomically replaced when it is not already canonical. A parse
/// error propagates and leaves the file untouched.
FormatResult format_file(const std::filesystem::path& path, bool write_in_place);

}  // namespace essencery::essfmt
