#include "lexer.hpp"

#include <limits>

#include "essencery/utf8.hpp"

namespace essencery {

ParseError::ParseError(int line, int column, std::string message,
                       std::optional<std::string> expected)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message +
                         (expected ? " (expected " + *expected + ")" : std::string())),
      line_(line),
      column_(column),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

namespace detail {

namespace {

bool is_word_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_word_char(char c) { return is_word_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::string_view describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::Word: return "word";
    case TokenKind::String: return "string";
    case TokenKind::Integer: return "integer";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Comma: return "','";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::DashDash: return "'--'";
    case TokenKind::End: return "end of input";
  }
  return "token";
}

bool is_ident(std::string_view text) {
  if (text.empty() || text[0] < 'a' || text[0] > 'z') return false;
  for (const char c : text) {
    if (!((c >= 'a' && c <= 'z') || is_digit(c) || c == '_')) return false;
  }
  return true;
}

bool is_name(std::string_view text) {
  if (text.empty() || !is_word_start(text[0])) return false;
  for (const char c : text) {
    if (!is_word_char(c)) return false;
  }
  return true;
}

Lexer::Lexer(std::string_view input) : input_(input) {
  if (const auto bad = utf8::first_invalid(input)) {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < *bad; ++i) {
      const auto c = static_cast<unsigned char>(input[i]);
      if (c == '\n') {
        ++line;
        column = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++column;
      }
    }
    throw ParseError(line, column, "invalid UTF-8 byte sequence");
  }
}

void Lexer::advance() {
  const char c = input_[pos_++];
  if (c == '\n') {
    ++line_;
    column_ = 1;
    return;
  }
  // Continuation bytes belong to the code point already counted.
  while (pos_ < input_.size() && (static_cast<unsigned char>(input_[pos_]) & 0xC0) == 0x80) ++pos_;
  ++column_;
}

void Lexer::fail(int line, int column, std::string message) const {
  throw ParseError(line, column, std::move(message));
}

void Lexer::skip_trivia() {
  while (!at_end()) {
    const char c = current();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance();
    } else if (c == '#') {
      while (!at_end() && current() != '\n') advance();
    } else {
      break;
    }
  }
}

const Token& Lexer::peek() {
  if (!has_lookahead_) {
    lookahead_ = scan();
    has_lookahead_ = true;
  }
  return lookahead_;
}

Token Lexer::next() {
  if (has_lookahead_) {
    has_lookahead_ = false;
    return std::move(lookahead_);
  }
  return scan();
}

Token Lexer::scan() {
  skip_trivia();
  Token tok;
  tok.line = line_;
  tok.column = column_;
  if (at_end()) {
    tok.kind = TokenKind::End;
    return tok;
  }
  const char c = current();
  auto single = [&](TokenKind kind) {
    advance();
    tok.kind = kind;
    return tok;
  };
  switch (c) {
    case '{': return single(TokenKind::LBrace);
    case '}': return single(TokenKind::RBrace);
    case '(': return single(TokenKind::LParen);
    case ')': return single(TokenKind::RParen);
    case ',': return single(TokenKind::Comma);
    case ';': return single(TokenKind::Semicolon);
    case ':': return single(TokenKind::Colon);
    case '.': return single(TokenKind::Dot);
    default: break;
  }
  if (c == '"') {
    advance();
    tok.kind = TokenKind::String;
    for (;;) {
      if (at_end()) fail(tok.line, tok.column, "unterminated string");
      const char s = current();
      if (s == '"') {
        advance();
        return tok;
      }
      if (s == '\n') fail(line_, column_, "newline inside string (use \\n)");
      if (s == '\\') {
        const int esc_line = line_;
        const int esc_column = column_;
        advance();
        const char e = current();
        if (e == '"' || e == '\\') {
          tok.text.push_back(e);
        } else if (e == 'n') {
          tok.text.push_back('\n');
        } else {
          fail(esc_line, esc_column, "unknown escape sequence");
        }
        advance();
        continue;
      }
      const std::size_t start = pos_;
      advance();
      tok.text.append(input_.substr(start, pos_ - start));
    }
  }
  if (c == '-') {
    const char following = pos_ + 1 < input_.size() ? input_[pos_ + 1] : '\0';
    if (following == '>') {
      advance();
      advance();
      tok.kind = TokenKind::Arrow;
      return tok;
    }
    if (following == '-') {
      advance();
      advance();
      tok.kind = TokenKind::DashDash;
      return tok;
    }
    if (!is_digit(following)) fail(tok.line, tok.column, "unexpected character '-'");
  }
  if (c == '-' || is_digit(c)) {
    const bool negative = c == '-';
    if (negative) advance();
    // Accumulate as a negative value so INT64_MIN is representable.
    std::int64_t value = 0;
    while (!at_end() && is_digit(current())) {
      const int digit = current() - '0';
      if (value < (std::numeric_limits<std::int64_t>::min() + digit) / 10) {
        fail(tok.line, tok.column, "integer out of range");
      }
      value = value * 10 - digit;
      advance();
    }
    if (!negative) {
      if (value == std::numeric_limits<std::int64_t>::min()) {
        fail(tok.line, tok.column, "integer out of range");
      }
      value = -value;
    }
    if (!at_end() && is_word_start(current())) fail(line_, column_, "unexpected character after integer");
    tok.kind = TokenKind::Integer;
    tok.number = value;
    return tok;
  }
  if (is_word_start(c)) {
    const std::size_t start = pos_;
    while (!at_end() && is_word_char(current())) advance();
    tok.kind = TokenKind::Word;
    tok.text = std::string(input_.substr(start, pos_ - start));
    return tok;
  }
  const std::size_t len = std::max<std::size_t>(1, utf8::sequence_length(static_cast<unsigned char>(c)));
  fail(tok.line, tok.column, "unexpected character '" + std::string(input_.substr(pos_, len)) + "'");
}

Token Cursor::expect(TokenKind kind) {
  Token tok = next();
  if (tok.kind != kind) {
    fail(tok, "unexpected " + std::string(describe(tok.kind)), std::string(describe(kind)));
  }
  return tok;
}

Token Cursor::expect_word(std::string_view word) {
  Token tok = next();
  if (tok.kind != TokenKind::Word || tok.text != word) {
    const std::string found = tok.kind == TokenKind::Word ? "'" + tok.text + "'" : std::string(describe(tok.kind));
    fail(tok, "unexpected " + found, "'" + std::string(word) + "'");
  }
  return tok;
}

Token Cursor::expect_ident(std::string_view what) {
  Token tok = next();
  if (tok.kind != TokenKind::Word || !is_ident(tok.text)) {
    const std::string found = tok.kind == TokenKind::Word ? "'" + tok.text + "'" : std::string(describe(tok.kind));
    fail(tok, "unexpected " + found, std::string(what));
  }
  return tok;
}

std::int64_t Cursor::expect_integer(std::int64_t min, std::int64_t max, std::string_view what) {
  Token tok = expect(TokenKind::Integer);
  if (tok.number < min || tok.number > max) {
    fail(tok, std::string(what) + " " + std::to_string(tok.number) + " out of range [" +
                  std::to_string(min) + ", " + std::to_string(max) + "]");
  }
  return tok.number;
}

void Cursor::fail(const Token& at, std::string message, std::optional<std::string> expected) {
  throw ParseError(at.line, at.column, std::move(message), std::move(expected));
}

}  // namespace detail
}  // namespace essencery
