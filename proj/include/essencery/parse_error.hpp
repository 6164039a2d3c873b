#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace essencery {

/// A positioned failure while reading `.ess` or kernel text. Line and column
/// are 1-based; the column counts code points, not bytes.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::string message,
             std::optional<std::string> expected = std::nullopt);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }
  const std::optional<std::string>& expected() const noexcept { return expected_; }

 private:
  int line_;
  int column_;
  std::string message_;
  std::optional<std::string> expected_;
};

}  // namespace essencery
