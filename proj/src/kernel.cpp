#include "essencery/kernel.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "lexer.hpp"
#include "text_util.hpp"

#ifndef ESSENCERY_DATA_DIR
#define ESSENCERY_DATA_DIR "data"
#endif

namespace essencery {

std::string_view to_string(KernelCategory category) {
  switch (category) {
    case KernelCategory::Alpha: return "alpha";
    case KernelCategory::Space: return "space";
    case KernelCategory::Competency: return "competency";
  }
  return "alpha";
}

std::optional<KernelCategory> parse_category(std::string_view text) {
  if (text == "alpha") return KernelCategory::Alpha;
  if (text == "space") return KernelCategory::Space;
  if (text == "competency") return KernelCategory::Competency;
  return std::nullopt;
}

const AreaOfConcern* Kernel::find_area(std::string_view key) const {
  const auto it = std::find_if(areas.begin(), areas.end(), [&](const auto& a) { return a.key == key; });
  return it == areas.end() ? nullptr : &*it;
}

std::optional<KernelPath> KernelPath::parse(std::string_view text) {
  constexpr std::string_view prefix = "kernel.";
  if (!text.starts_with(prefix)) return std::nullopt;
  text.remove_prefix(prefix.size());
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return std::nullopt;
  const auto category = parse_category(text.substr(0, dot));
  const auto name = text.substr(dot + 1);
  if (!category || !detail::is_name(name)) return std::nullopt;
  return KernelPath{*category, std::string(name)};
}

std::string KernelPath::str() const {
  return "kernel." + std::string(to_string(category)) + "." + name;
}

const std::string& KernelElementRef::name() const {
  if (alpha) return alpha->name;
  if (space) return space->name;
  return competency->name;
}

const std::string& KernelElementRef::area() const {
  if (alpha) return alpha->area;
  if (space) return space->area;
  return competency->area;
}

namespace {

template <typename T>
const T* find_named(const std::vector<T>& items, std::string_view name) {
  const auto it = std::find_if(items.begin(), items.end(), [&](const T& e) { return e.name == name; });
  return it == items.end() ? nullptr : &*it;
}

std::optional<KernelElementRef> lookup(const Kernel& kernel, KernelCategory category, std::string_view name) {
  KernelElementRef ref;
  ref.category = category;
  switch (category) {
    case KernelCategory::Alpha: ref.alpha = find_named(kernel.alphas, name); break;
    case KernelCategory::Space: ref.space = find_named(kernel.spaces, name); break;
    case KernelCategory::Competency: ref.competency = find_named(kernel.competencies, name); break;
  }
  if (!ref.alpha && !ref.space && !ref.competency) return std::nullopt;
  return ref;
}

}  // namespace

Resolution resolve(const Kernel& kernel, const KernelPath& path) {
  Resolution result;
  if (auto found = lookup(kernel, path.category, path.name)) {
    result.status = ResolveStatus::Found;
    result.element = found;
    return result;
  }
  for (const auto other : {KernelCategory::Alpha, KernelCategory::Space, KernelCategory::Competency}) {
    if (other != path.category && lookup(kernel, other, path.name)) {
      result.status = ResolveStatus::WrongCategory;
      result.found_in_category = other;
      return result;
    }
  }
  result.status = ResolveStatus::NotFound;
  return result;
}

Resolution resolve(const Kernel& kernel, std::string_view path_text) {
  const auto path = KernelPath::parse(path_text);
  if (!path) return Resolution{ResolveStatus::Malformed, std::nullopt, std::nullopt};
  return resolve(kernel, *path);
}

std::vector<KernelElementRef> elements(const Kernel& kernel) {
  std::vector<KernelElementRef> out;
  for (const auto& a : kernel.alphas) out.push_back({KernelCategory::Alpha, &a, nullptr, nullptr});
  for (const auto& s : kernel.spaces) out.push_back({KernelCategory::Space, nullptr, &s, nullptr});
  for (const auto& c : kernel.competencies) out.push_back({KernelCategory::Competency, nullptr, nullptr, &c});
  return out;
}

KernelError::KernelError(std::string message, int line, int column)
    : std::runtime_error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + message
                                  : message),
      line_(line),
      column_(column) {}

namespace {

using detail::Cursor;
using detail::Token;
using detail::TokenKind;

class KernelParser {
 public:
  KernelParser(std::string_view text, KernelLoadMode mode, const Kernel* base)
      : cursor_(text), mode_(mode) {
    if (mode_ == KernelLoadMode::Extend && base) kernel_ = *base;
  }

  Kernel run() {
    cursor_.expect_word("kernel");
    const Token title = cursor_.expect(TokenKind::String);
    if (mode_ == KernelLoadMode::Replace || kernel_.title.empty()) kernel_.title = title.text;
    cursor_.expect(TokenKind::LBrace);
    while (!cursor_.peek_is(TokenKind::RBrace)) {
      if (cursor_.peek_is(TokenKind::End)) cursor_.fail(cursor_.peek(), "unexpected end of input", "'}'");
      parse_area();
    }
    cursor_.next();
    const Token end = cursor_.next();
    if (end.kind != TokenKind::End) cursor_.fail(end, "unexpected content after kernel block", "end of input");
    return std::move(kernel_);
  }

 private:
  void parse_area() {
    cursor_.expect_word("area");
    const Token key = cursor_.expect_ident("area key");
    const Token display = cursor_.expect(TokenKind::String);
    cursor_.expect_word("color");
    const Token color = cursor_.expect(TokenKind::Word);
    if (!declared_areas_.insert(key.text).second) {
      throw KernelError("area '" + key.text + "' declared twice", key.line, key.column);
    }
    auto existing = std::find_if(kernel_.areas.begin(), kernel_.areas.end(),
                                 [&](const auto& a) { return a.key == key.text; });
    if (existing != kernel_.areas.end()) {
      existing->display_name = display.text;
      existing->color = color.text;
    } else {
      kernel_.areas.push_back({key.text, display.text, color.text});
    }

    cursor_.expect(TokenKind::LBrace);
    for (;;) {
      const Token& t = cursor_.peek();
      if (t.kind == TokenKind::RBrace) break;
      if (t.kind != TokenKind::Word) cursor_.fail(t, "unexpected " + std::string(describe(t.kind)), "'alpha', 'space', 'competency' or '}'");
      if (t.text == "alpha") {
        parse_alpha(key.text);
      } else if (t.text == "space") {
        cursor_.next();
        const Token name = expect_name();
        check_unique(KernelCategory::Space, name);
        insert_grouped(kernel_.spaces, KernelSpace{name.text, key.text});
      } else if (t.text == "competency") {
        parse_competency(key.text);
      } else {
        cursor_.fail(t, "unexpected '" + t.text + "'", "'alpha', 'space', 'competency' or '}'");
      }
    }
    cursor_.next();
  }

  void parse_alpha(const std::string& area) {
    cursor_.next();
    const Token name = expect_name();
    check_unique(KernelCategory::Alpha, name);
    KernelAlpha alpha{name.text, area, {}};
    cursor_.expect(TokenKind::LBrace);
    std::set<std::string> seen;
    while (cursor_.peek_word("state")) {
      cursor_.next();
      const Token state = cursor_.expect(TokenKind::String);
      if (state.text.empty()) throw KernelError("empty state name", state.line, state.column);
      if (!seen.insert(state.text).second) {
        throw KernelError("duplicate state \"" + state.text + "\" in alpha " + alpha.name, state.line, state.column);
      }
      alpha.states.push_back(state.text);
    }
    const Token close = cursor_.peek();
    if (alpha.states.empty()) {
      if (close.kind == TokenKind::RBrace) throw KernelError("alpha " + alpha.name + " has no states", close.line, close.column);
      cursor_.fail(close, "unexpected " + std::string(describe(close.kind)), "'state'");
    }
    cursor_.expect(TokenKind::RBrace);
    insert_grouped(kernel_.alphas, std::move(alpha));
  }

  void parse_competency(const std::string& area) {
    cursor_.next();
    const Token name = expect_name();
    check_unique(KernelCategory::Competency, name);
    KernelCompetency competency{name.text, area, {}};
    if (cursor_.peek_is(TokenKind::LBrace)) {
      cursor_.next();
      std::set<std::string> seen;
      while (cursor_.peek_word("level")) {
        cursor_.next();
        const Token level = cursor_.expect(TokenKind::String);
        if (!seen.insert(level.text).second) {
          throw KernelError("duplicate level \"" + level.text + "\" in competency " + competency.name, level.line,
                            level.column);
        }
        competency.levels.push_back(level.text);
      }
      cursor_.expect(TokenKind::RBrace);
    }
    insert_grouped(kernel_.competencies, std::move(competency));
  }

  Token expect_name() {
    Token t = cursor_.next();
    if (t.kind != TokenKind::Word) cursor_.fail(t, "unexpected " + std::string(describe(t.kind)), "element name");
    return t;
  }

  void check_unique(KernelCategory category, const Token& name) {
    if (lookup(kernel_, category, name.text)) {
      throw KernelError("duplicate " + std::string(to_string(category)) + " name '" + name.text + "'", name.line,
                        name.column);
    }
  }

  std::size_t area_index(const std::string& key) const {
    for (std::size_t i = 0; i < kernel_.areas.size(); ++i) {
      if (kernel_.areas[i].key == key) return i;
    }
    return kernel_.areas.size();
  }

  // Keeps each list grouped by area so that printing and re-reading preserves order.
  template <typename T>
  void insert_grouped(std::vector<T>& items, T item) {
    const std::size_t index = area_index(item.area);
    const auto pos = std::find_if(items.begin(), items.end(),
                                  [&](const T& e) { return area_index(e.area) > index; });
    items.insert(pos, std::move(item));
  }

  Cursor cursor_;
  KernelLoadMode mode_;
  Kernel kernel_;
  std::set<std::string> declared_areas_;
};

}  // namespace

std::filesystem::path standard_kernel_path() {
  return std::filesystem::path(ESSENCERY_DATA_DIR) / "essence.kernel";
}

Kernel parse_kernel(std::string_view text, KernelLoadMode mode, const Kernel* base) {
  Kernel kernel;
  try {
    kernel = KernelParser(text, mode, base).run();
  } catch (const ParseError& e) {
    throw KernelError(e.expected() ? e.message() + " (expected " + *e.expected() + ")" : e.message(), e.line(),
                      e.column());
  }
  validate_kernel(kernel);
  return kernel;
}

Kernel load_kernel(const std::filesystem::path& path, KernelLoadMode mode, const Kernel* base) {
  std::string text;
  try {
    text = detail::read_file(path);
  } catch (const std::exception& e) {
    throw KernelError(std::string("kernel file: ") + e.what());
  }
  try {
    return parse_kernel(text, mode, base);
  } catch (const KernelError& e) {
    throw KernelError(path.string() + ": " + e.what(), e.line(), e.column());
  }
}

Kernel load_standard_kernel() { return load_kernel(standard_kernel_path()); }

void validate_kernel(const Kernel& kernel) {
  std::set<std::string> keys;
  for (const auto& area : kernel.areas) {
    if (!detail::is_ident(area.key)) throw KernelError("area key '" + area.key + "' is not lowercase");
    if (!keys.insert(area.key).second) throw KernelError("duplicate area key '" + area.key + "'");
  }
  auto check = [&](std::string_view what, const std::string& name, const std::string& area,
                   std::set<std::string>& names) {
    if (!detail::is_name(name)) throw KernelError(std::string(what) + " name '" + name + "' is not an identifier");
    if (!keys.count(area)) {
      throw KernelError(std::string(what) + " " + name + " references unknown area '" + area + "'");
    }
    if (!names.insert(name).second) throw KernelError("duplicate " + std::string(what) + " name '" + name + "'");
  };
  std::set<std::string> alphas, spaces, competencies;
  for (const auto& a : kernel.alphas) {
    check("alpha", a.name, a.area, alphas);
    if (a.states.empty()) throw KernelError("alpha " + a.name + " has no states");
    if (std::set<std::string>(a.states.begin(), a.states.end()).size() != a.states.size()) {
      throw KernelError("alpha " + a.name + " has duplicate states");
    }
  }
  for (const auto& s : kernel.spaces) check("space", s.name, s.area, spaces);
  for (const auto& c : kernel.competencies) check("competency", c.name, c.area, competencies);
}

std::string print_kernel(const Kernel& kernel) {
  using detail::quote;
  std::string out = "kernel " + quote(kernel.title) + " {\n";
  for (std::size_t i = 0; i < kernel.areas.size(); ++i) {
    const auto& area = kernel.areas[i];
    if (i > 0) out += "\n";
    out += "  area " + area.key + " " + quote(area.display_name) + " color " + area.color + " {\n";
    for (const auto& a : kernel.alphas) {
      if (a.area != area.key) continue;
      out += "    alpha " + a.name + " {\n";
      for (const auto& s : a.states) out += "      state " + quote(s) + "\n";
      out += "    }\n";
    }
    for (const auto& s : kernel.spaces) {
      if (s.area == area.key) out += "    space " + s.name + "\n";
    }
    for (const auto& c : kernel.competencies) {
      if (c.area != area.key) continue;
      out += "    competency " + c.name;
      if (c.levels.empty()) {
        out += "\n";
        continue;
      }
      out += " {\n";
      for (const auto& l : c.levels) out += "      level " + quote(l) + "\n";
      out += "    }\n";
    }
    out += "  }\n";
  }
  out += "}\n";
  return out;
}

std::optional<KernelLoadMode> parse_load_mode(std::string_view text) {
  if (text == "replace") return KernelLoadMode::Replace;
  if (text == "extend") return KernelLoadMode::Extend;
  return std::nullopt;
}

Kernel load_effective_kernel(const std::optional<std::filesystem::path>& override_path,
                             std::optional<KernelLoadMode> mode) {
  std::optional<std::filesystem::path> path = override_path;
  if (!path) {
    if (const char* env = std::getenv("ESSENCERY_KERNEL"); env && *env) path = env;
  }
  if (!mode) {
    if (const char* env = std::getenv("ESSENCERY_KERNEL_MODE"); env && *env) {
      mode = parse_load_mode(env);
      if (!mode) throw KernelError(std::string("ESSENCERY_KERNEL_MODE must be replace or extend, got '") + env + "'");
    }
  }
  const KernelLoadMode effective = mode.value_or(KernelLoadMode::Extend);
  if (path && effective == KernelLoadMode::Replace) return load_kernel(*path);
  Kernel standard = load_standard_kernel();
  if (!path) return standard;
  return load_kernel(*path, KernelLoadMode::Extend, &standard);
}

}  // namespace essencery
