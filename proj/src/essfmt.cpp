#include "essencery/essfmt.hpp"

#include <limits>
#include <vector>

#include "lexer.hpp"
#include "text_util.hpp"

namespace essencery::essfmt {

namespace {

using detail::Cursor;
using detail::Token;
using detail::TokenKind;

constexpr std::string_view kStatementKeywords = "'node', 'note', 'rel', 'card', 'bind' or '}'";

class DocumentParser {
 public:
  explicit DocumentParser(std::string_view text) : cursor_(text) {}

  Graph run() {
    cursor_.expect_word("graph");
    graph_.title = cursor_.expect(TokenKind::String).text;
    cursor_.expect(TokenKind::LBrace);
    parse_meta();
    for (;;) {
      const Token& t = cursor_.peek();
      if (t.kind == TokenKind::RBrace) break;
      if (t.kind == TokenKind::End) cursor_.fail(t, "unexpected end of input", "'}'");
      if (t.kind != TokenKind::Word) cursor_.fail(t, "unexpected " + std::string(describe(t.kind)), std::string(kStatementKeywords));
      if (t.text == "node") {
        parse_node();
      } else if (t.text == "note") {
        parse_note();
      } else if (t.text == "rel") {
        parse_rel();
      } else if (t.text == "card") {
        parse_card();
      } else if (t.text == "bind") {
        parse_bind();
      } else {
        cursor_.fail(t, "unknown statement '" + t.text + "'", std::string(kStatementKeywords));
      }
    }
    cursor_.next();
    const Token end = cursor_.next();
    if (end.kind != TokenKind::End) cursor_.fail(end, "unexpected content after graph block", "end of input");
    resolve_references();
    return std::move(graph_);
  }

 private:
  struct Reference {
    Token token;
    std::string what;
  };

  void parse_meta() {
    cursor_.expect_word("meta");
    cursor_.expect(TokenKind::LBrace);
    cursor_.expect_word("id");
    cursor_.expect(TokenKind::Colon);
    graph_.id = cursor_.expect(TokenKind::String).text;
    cursor_.expect(TokenKind::Semicolon);
    cursor_.expect_word("revision");
    cursor_.expect(TokenKind::Colon);
    graph_.revision = static_cast<std::uint64_t>(
        cursor_.expect_integer(0, std::numeric_limits<std::int64_t>::max(), "revision"));
    cursor_.expect(TokenKind::Semicolon);
    cursor_.expect(TokenKind::RBrace);
  }

  Token fresh_id() {
    Token id = cursor_.expect_ident("element id");
    if (graph_.has_element(id.text)) cursor_.fail(id, "duplicate id '" + id.text + "'");
    return id;
  }

  Position parse_position() {
    cursor_.expect_word("at");
    cursor_.expect(TokenKind::LParen);
    const auto x = cursor_.expect_integer(-kCoordinateLimit, kCoordinateLimit, "x coordinate");
    cursor_.expect(TokenKind::Comma);
    const auto y = cursor_.expect_integer(-kCoordinateLimit, kCoordinateLimit, "y coordinate");
    cursor_.expect(TokenKind::RParen);
    return Position{static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)};
  }

  void parse_node() {
    cursor_.next();
    Node node;
    node.id = fresh_id().text;
    const Token kind = cursor_.expect(TokenKind::Word);
    const auto parsed_kind = parse_node_kind(kind.text);
    if (!parsed_kind) {
      cursor_.fail(kind, "unknown node kind '" + kind.text + "'",
                   "alpha, activity_space, activity, work_product, competency or pattern");
    }
    node.kind = *parsed_kind;
    node.name = cursor_.expect(TokenKind::String).text;
    node.position = parse_position();
    if (cursor_.peek_word("area")) {
      cursor_.next();
      const Token area = cursor_.expect(TokenKind::Word);
      node.area = parse_area(area.text);
      if (!node.area) cursor_.fail(area, "unknown area '" + area.text + "'", "customer, solution or endeavor");
    }
    graph_.nodes.emplace(node.id, std::move(node));
  }

  void parse_note() {
    cursor_.next();
    TextNote note;
    note.id = fresh_id().text;
    note.text = cursor_.expect(TokenKind::String).text;
    note.position = parse_position();
    graph_.notes.emplace(note.id, std::move(note));
  }

  void parse_rel() {
    cursor_.next();
    Relation rel;
    rel.id = fresh_id().text;
    const Token source = cursor_.expect_ident("node id");
    const Token arrow = cursor_.next();
    if (arrow.kind == TokenKind::Arrow) {
      rel.directed = true;
    } else if (arrow.kind == TokenKind::DashDash) {
      rel.directed = false;
    } else {
      cursor_.fail(arrow, "unexpected " + std::string(describe(arrow.kind)), "'->' or '--'");
    }
    const Token target = cursor_.expect_ident("node id");
    rel.source = source.text;
    rel.target = target.text;
    if (cursor_.peek_is(TokenKind::String)) rel.label = cursor_.next().text;
    node_refs_.push_back({source, "relation " + rel.id + " source"});
    node_refs_.push_back({target, "relation " + rel.id + " target"});
    graph_.relations.emplace(rel.id, std::move(rel));
  }

  void parse_card() {
    cursor_.next();
    const Token owner = cursor_.expect_ident("node id");
    if (graph_.cards.count(owner.text)) cursor_.fail(owner, "duplicate card for node '" + owner.text + "'");
    Card card;
    card.owner = owner.text;
    cursor_.expect(TokenKind::LBrace);
    if (cursor_.peek_word("desc")) {
      cursor_.next();
      card.description = cursor_.expect(TokenKind::String).text;
    }
    while (cursor_.peek_word("item")) {
      cursor_.next();
      card.items.push_back(cursor_.expect(TokenKind::String).text);
    }
    while (cursor_.peek_word("link")) {
      cursor_.next();
      const Token link = cursor_.expect(TokenKind::String);
      if (!is_absolute_url(link.text)) cursor_.fail(link, "'" + link.text + "' is not an absolute URL");
      card.links.push_back(link.text);
    }
    const Token& close = cursor_.peek();
    if (close.kind != TokenKind::RBrace) {
      const std::string found =
          close.kind == TokenKind::Word ? "'" + close.text + "'" : std::string(describe(close.kind));
      cursor_.fail(close, "unexpected " + found + " in card", "'desc', 'item', 'link' (in that order) or '}'");
    }
    cursor_.next();
    node_refs_.push_back({owner, "card owner"});
    graph_.cards.emplace(card.owner, std::move(card));
  }

  void parse_bind() {
    cursor_.next();
    const Token owner = cursor_.expect_ident("node id");
    if (graph_.bindings.count(owner.text)) cursor_.fail(owner, "duplicate binding for node '" + owner.text + "'");
    cursor_.expect_word("kernel");
    cursor_.expect(TokenKind::Dot);
    const Token category = cursor_.expect(TokenKind::Word);
    const auto parsed = parse_category(category.text);
    if (!parsed) cursor_.fail(category, "unknown kernel category '" + category.text + "'", "alpha, space or competency");
    cursor_.expect(TokenKind::Dot);
    const Token name = cursor_.expect(TokenKind::Word);
    node_refs_.push_back({owner, "binding owner"});
    graph_.bindings.emplace(owner.text, Binding{owner.text, KernelPath{*parsed, name.text}});
  }

  void resolve_references() {
    for (auto& ref : node_refs_) {
      if (!graph_.nodes.count(ref.token.text)) {
        cursor_.fail(ref.token, ref.what + " '" + ref.token.text + "' is not a declared node");
      }
    }
  }

  Cursor cursor_;
  Graph graph_;
  std::vector<Reference> node_refs_;
};

std::string position_text(Position p) {
  return "at (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

}  // namespace

Graph parse(std::string_view text) { return DocumentParser(text).run(); }

std::string print(const Graph& graph) {
  using detail::quote;
  std::string out = "graph " + quote(graph.title) + " {\n";
  out += "  meta { id: " + quote(graph.id) + "; revision: " + std::to_string(graph.revision) + "; }\n";
  for (const auto& [id, node] : graph.nodes) {
    out += "  node " + id + " " + std::string(to_string(node.kind)) + " " + quote(node.name) + " " +
           position_text(node.position);
    if (node.area) out += " area " + std::string(to_string(*node.area));
    out += "\n";
  }
  for (const auto& [id, note] : graph.notes) {
    out += "  note " + id + " " + quote(note.text) + " " + position_text(note.position) + "\n";
  }
  for (const auto& [id, rel] : graph.relations) {
    out += "  rel " + id + " " + rel.source + (rel.directed ? " -> " : " -- ") + rel.target;
    if (rel.label) out += " " + quote(*rel.label);
    out += "\n";
  }
  for (const auto& [owner, card] : graph.cards) {
    out += "  card " + owner + " {";
    if (!card.description.empty()) out += " desc " + quote(card.description);
    for (const auto& item : card.items) out += " item " + quote(item);
    for (const auto& link : card.links) out += " link " + quote(link);
    out += " }\n";
  }
  for (const auto& [owner, binding] : graph.bindings) {
    out += "  bind " + owner + " " + binding.target.str() + "\n";
  }
  out += "}\n";
  return out;
}

FormatResult format_file(const std::filesystem::path& path, bool write_in_place) {
  const std::string original = detail::read_file(path);
  FormatResult result;
  result.canonical = print(parse(original));
  result.changed = result.canonical != original;
  if (write_in_place && result.changed) detail::write_file_atomic(path, result.canonical);
  return result;
}

}  // namespace essencery::essfmt
