#pragma once

#include <iosfwd>

namespace essencery::cli {

/// Entry point of the `essencery` tool. Exit codes: 0 success, 1 lint
/// findings, 2 usage, parse or I/O failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace essencery::cli
