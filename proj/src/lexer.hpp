#pragma once

// Tokenizer shared by the `.ess` document parser and the kernel file parser.

#include <cstdint>
#include <string>
#include <string_view>

#include "essencery/parse_error.hpp"

namespace essencery::detail {

enum class TokenKind {
  Word,       // [A-Za-z_][A-Za-z0-9_]*
  String,     // "..." with \" \\ \n escapes, value unescaped
  Integer,    // -?[0-9]+
  LBrace,
  RBrace,
  LParen,
  RParen,
  Comma,
  Semicolon,
  Colon,
  Dot,
  Arrow,      // ->
  DashDash,   // --
  End,
};

std::string_view describe(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;  // word text or unescaped string value
  std::int64_t number = 0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  /// Throws ParseError if `input` is not well-formed UTF-8.
  explicit Lexer(std::string_view input);

  const Token& peek();
  Token next();

 private:
  Token scan();
  void skip_trivia();
  char current() const { return pos_ < input_.size() ? input_[pos_] : '\0'; }
  bool at_end() const { return pos_ >= input_.size(); }
  void advance();
  [[noreturn]] void fail(int line, int column, std::string message) const;

  std::string_view input_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Token lookahead_;
  bool has_lookahead_ = false;
};

/// Recursive-descent helpers over a Lexer.
class Cursor {
 public:
  explicit Cursor(std::string_view input) : lexer_(input) {}

  const Token& peek() { return lexer_.peek(); }
  Token next() { return lexer_.next(); }

  bool peek_is(TokenKind kind) { return peek().kind == kind; }
  bool peek_word(std::string_view word) {
    return peek().kind == TokenKind::Word && peek().text == word;
  }

  Token expect(TokenKind kind);
  Token expect_word(std::string_view word);
  /// A word matching [a-z][a-z0-9_]*.
  Token expect_ident(std::string_view what = "identifier");
  std::int64_t expect_integer(std::int64_t min, std::int64_t max, std::string_view what);

  [[noreturn]] void fail(const Token& at, std::string message,
                         std::optional<std::string> expected = std::nullopt);

 private:
  Lexer lexer_;
};

bool is_ident(std::string_view text);
bool is_name(std::string_view text);

}  // namespace essencery::detail
