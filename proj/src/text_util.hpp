#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

namespace essencery::detail {

/// Double-quoted DSL string literal; escapes only `"`, `\` and LF.
inline std::string quote(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back('"');
  for (const char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

/// Reads a whole file; throws std::runtime_error on failure.
std::string read_file(const std::filesystem::path& path);

/// Writes `contents` to a sibling temp file, flushes it to disk and renames it
/// over `path`. Either the old or the new contents are visible afterwards.
/// `before_rename`, when set, runs after the temp file is durable and before
/// the rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents,
                       const std::function<void(const std::filesystem::path& temp)>& before_rename = {});

}  // namespace essencery::detail
