#include "essencery/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

namespace essencery::render {

namespace {

constexpr std::string_view kStroke = "#333333";
constexpr std::string_view kWhite = "#ffffff";

// Fixed-point formatting: at most two decimals, no trailing zeros.
std::string num(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default:
        // XML 1.0 forbids most C0 controls; render them as spaces.
        if (static_cast<unsigned char>(c) < 0x20 && c != '\t' && c != '\n') {
          out.push_back(' ');
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  for (;;) {
    const auto nl = text.find('\n', start);
    lines.emplace_back(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

std::string points(std::initializer_list<std::pair<double, double>> pts) {
  std::string out;
  for (const auto& [x, y] : pts) {
    if (!out.empty()) out += " ";
    out += num(x) + "," + num(y);
  }
  return out;
}

/// Glyph outline centred on (cx, cy) with half extents (hw, hh).
std::string glyph_shape(Glyph glyph, double cx, double cy, double hw, double hh, std::string_view fill) {
  const std::string style = " fill=\"" + std::string(fill) + "\" stroke=\"" + std::string(kStroke) + "\" stroke-width=\"1.5\"";
  const double l = cx - hw, r = cx + hw, t = cy - hh, b = cy + hh;
  switch (glyph) {
    case Glyph::Circle:
      return "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(hh) + "\"" + style + "/>";
    case Glyph::ChevronPentagon:
      return "<polygon points=\"" + points({{l, t}, {r - hh * 2 / 3, t}, {r, cy}, {r - hh * 2 / 3, b}, {l, b}}) + "\"" +
             style + "/>";
    case Glyph::ArrowRectangle: {
      const double tip = hh * 2 / 3;
      const double radius = hh / 3;
      return "<path d=\"M " + num(l + radius) + " " + num(t) + " L " + num(r - tip) + " " + num(t) + " L " + num(r) +
             " " + num(cy) + " L " + num(r - tip) + " " + num(b) + " L " + num(l + radius) + " " + num(b) + " Q " +
             num(l) + " " + num(b) + " " + num(l) + " " + num(b - radius) + " L " + num(l) + " " + num(t + radius) +
             " Q " + num(l) + " " + num(t) + " " + num(l + radius) + " " + num(t) + " Z\"" + style + "/>";
    }
    case Glyph::FoldedRectangle: {
      const double fold = hh / 2;
      return "<path d=\"M " + num(l) + " " + num(t) + " L " + num(r - fold) + " " + num(t) + " L " + num(r) + " " +
             num(t + fold) + " L " + num(r) + " " + num(b) + " L " + num(l) + " " + num(b) + " Z M " + num(r - fold) +
             " " + num(t) + " L " + num(r - fold) + " " + num(t + fold) + " L " + num(r) + " " + num(t + fold) +
             "\"" + style + "/>";
    }
    case Glyph::ShieldPentagon:
      return "<polygon points=\"" + points({{l, t}, {r, t}, {r, cy + hh / 3}, {cx, b}, {l, cy + hh / 3}}) + "\"" +
             style + "/>";
    case Glyph::Diamond:
      return "<polygon points=\"" + points({{cx, t}, {r, cy}, {cx, b}, {l, cy}}) + "\"" + style + "/>";
  }
  return {};
}

struct Box {
  std::int64_t min_x = std::numeric_limits<std::int64_t>::max();
  std::int64_t min_y = std::numeric_limits<std::int64_t>::max();
  std::int64_t max_x = std::numeric_limits<std::int64_t>::min();
  std::int64_t max_y = std::numeric_limits<std::int64_t>::min();

  bool empty() const { return min_x > max_x; }
  void add(std::int64_t x, std::int64_t y) {
    min_x = std::min(min_x, x);
    min_y = std::min(min_y, y);
    max_x = std::max(max_x, x);
    max_y = std::max(max_y, y);
  }
};

constexpr int kNoteHalfWidth = 70;
constexpr int kNoteHalfHeight = 20;

struct Point {
  double x;
  double y;
};

// Where the centre-to-centre segment leaves the glyph box around `from`.
Point clip_to_box(Point from, Point to) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  double s = std::numeric_limits<double>::infinity();
  if (dx != 0) s = std::min(s, kGlyphHalfWidth / std::abs(dx));
  if (dy != 0) s = std::min(s, kGlyphHalfHeight / std::abs(dy));
  if (!(s < 0.5)) return from;  // overlapping glyphs
  return {from.x + dx * s, from.y + dy * s};
}

}  // namespace

std::string color_for_token(std::string_view token) {
  if (token == "green") return "#b7e1a1";
  if (token == "yellow") return "#fbe89a";
  if (token == "blue") return "#a8cdf0";
  return std::string(token);
}

RenderTheme RenderTheme::standard() {
  RenderTheme theme;
  theme.area_fill = {
      {Area::Customer, color_for_token("green")},
      {Area::Solution, color_for_token("yellow")},
      {Area::Endeavor, color_for_token("blue")},
  };
  theme.glyphs = {
      {NodeKind::Alpha, Glyph::Circle},
      {NodeKind::ActivitySpace, Glyph::ChevronPentagon},
      {NodeKind::Activity, Glyph::ArrowRectangle},
      {NodeKind::WorkProduct, Glyph::FoldedRectangle},
      {NodeKind::Competency, Glyph::ShieldPentagon},
      {NodeKind::Pattern, Glyph::Diamond},
  };
  return theme;
}

RenderTheme RenderTheme::from_kernel(const Kernel& kernel) {
  RenderTheme theme = standard();
  for (const auto area : kAllAreas) {
    if (const auto* def = kernel.find_area(to_string(area))) theme.area_fill[area] = color_for_token(def->color);
  }
  return theme;
}

std::string RenderTheme::fill(std::optional<Area> area) const {
  if (!area) return std::string(kWhite);
  const auto it = area_fill.find(*area);
  return it == area_fill.end() ? std::string(kWhite) : it->second;
}

std::string render_graph_svg(const Graph& graph, const RenderTheme& theme) {
  const int fs = theme.font_size;
  const int label_offset = kGlyphHalfHeight + fs + 4;  // name baseline below the glyph

  Box box;
  for (const auto& [id, node] : graph.nodes) {
    box.add(node.position.x - kGlyphHalfWidth, node.position.y - kGlyphHalfHeight);
    box.add(node.position.x + kGlyphHalfWidth, node.position.y + label_offset + 4);
  }
  for (const auto& [id, note] : graph.notes) {
    box.add(note.position.x - kNoteHalfWidth, note.position.y - kNoteHalfHeight);
    box.add(note.position.x + kNoteHalfWidth, note.position.y + kNoteHalfHeight);
  }
  for (const auto& [id, rel] : graph.relations) {
    if (rel.source != rel.target) continue;
    if (const Node* n = graph.find_node(rel.source)) {
      // Self-loop control points and label.
      box.add(n->position.x + kGlyphHalfWidth + 50, n->position.y - kGlyphHalfHeight - 50 - fs);
    }
  }

  std::int64_t vx = 0, vy = 0, vw = theme.margin, vh = theme.margin;
  if (!box.empty()) {
    vx = box.min_x - theme.margin;
    vy = box.min_y - theme.margin;
    vw = box.max_x - box.min_x + 2 * std::int64_t{theme.margin};
    vh = box.max_y - box.min_y + 2 * std::int64_t{theme.margin};
  }

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + std::to_string(vx) + " " +
         std::to_string(vy) + " " + std::to_string(vw) + " " + std::to_string(vh) + "\" width=\"" +
         std::to_string(vw) + "\" height=\"" + std::to_string(vh) + "\" font-family=\"sans-serif\" font-size=\"" +
         std::to_string(fs) + "\">\n";
  out += "  <title>" + xml_escape(graph.title) + "</title>\n";
  out += "  <defs>\n";
  out += "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"8\" markerHeight=\"8\" "
         "orient=\"auto\"><polygon points=\"0,0 10,5 0,10\" fill=\"" + std::string(kStroke) + "\"/></marker>\n";
  out += "  </defs>\n";
  out += "  <g class=\"background\"><rect x=\"" + std::to_string(vx) + "\" y=\"" + std::to_string(vy) +
         "\" width=\"" + std::to_string(vw) + "\" height=\"" + std::to_string(vh) + "\" fill=\"" +
         std::string(kWhite) + "\"/></g>\n";

  std::string labels;
  if (!graph.relations.empty()) out += "  <g class=\"relations\">\n";
  for (const auto& [id, rel] : graph.relations) {
    const Node* s = graph.find_node(rel.source);
    const Node* t = graph.find_node(rel.target);
    if (!s || !t) continue;
    const std::string marker = rel.directed ? " marker-end=\"url(#arrow)\"" : "";
    const std::string kind_class = rel.directed ? "relation directed" : "relation undirected";
    Point label_at{};
    std::string d;
    if (s == t) {
      const double x = s->position.x, y = s->position.y;
      d = "M " + num(x + 20) + " " + num(y - kGlyphHalfHeight) + " C " + num(x + 20) + " " +
          num(y - kGlyphHalfHeight - 50) + " " + num(x + kGlyphHalfWidth + 50) + " " + num(y - 10) + " " +
          num(x + kGlyphHalfWidth) + " " + num(y - 10);
      label_at = {x + kGlyphHalfWidth + 10, y - kGlyphHalfHeight - 30};
    } else {
      const Point a{double(s->position.x), double(s->position.y)};
      const Point b{double(t->position.x), double(t->position.y)};
      const Point from = clip_to_box(a, b);
      const Point to = clip_to_box(b, a);
      d = "M " + num(from.x) + " " + num(from.y) + " L " + num(to.x) + " " + num(to.y);
      label_at = {(from.x + to.x) / 2, (from.y + to.y) / 2 - 4};
    }
    out += "    <path class=\"" + kind_class + "\" data-relation=\"" + id + "\" d=\"" + d + "\" fill=\"none\" stroke=\"" +
           std::string(kStroke) + "\" stroke-width=\"1.5\"" + marker + "/>\n";
    if (rel.label && !rel.label->empty()) {
      labels += "    <text class=\"relation-label\" data-relation=\"" + id + "\" x=\"" + num(label_at.x) + "\" y=\"" +
                num(label_at.y) + "\" text-anchor=\"middle\">" + xml_escape(*rel.label) + "</text>\n";
    }
  }
  out += labels;
  if (!graph.relations.empty()) out += "  </g>\n";

  // Empty groups are omitted so an empty graph is just its background.
  const bool any_shapes = !graph.nodes.empty() || !graph.notes.empty();
  if (any_shapes) out += "  <g class=\"nodes\">\n";
  for (const auto& [id, node] : graph.nodes) {
    const auto glyph = theme.glyphs.count(node.kind) ? theme.glyphs.at(node.kind) : Glyph::Circle;
    out += "    <g class=\"node " + std::string(to_string(node.kind)) + "\" data-id=\"" + id + "\">";
    out += glyph_shape(glyph, node.position.x, node.position.y, kGlyphHalfWidth, kGlyphHalfHeight,
                       theme.fill(node.area));
    out += "<text x=\"" + std::to_string(node.position.x) + "\" y=\"" +
           std::to_string(node.position.y + label_offset) + "\" text-anchor=\"middle\">" + xml_escape(node.name) +
           "</text></g>\n";
  }
  for (const auto& [id, note] : graph.notes) {
    const int x = note.position.x, y = note.position.y;
    out += "    <g class=\"note\" data-id=\"" + id + "\">";
    out += "<rect x=\"" + std::to_string(x - kNoteHalfWidth) + "\" y=\"" + std::to_string(y - kNoteHalfHeight) +
           "\" width=\"" + std::to_string(2 * kNoteHalfWidth) + "\" height=\"" + std::to_string(2 * kNoteHalfHeight) +
           "\" fill=\"#fffde7\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>";
    const auto lines = split_lines(note.text);
    const double first = y - (static_cast<double>(lines.size()) - 1) * (fs + 2) / 2.0 + fs / 3.0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      out += "<text x=\"" + std::to_string(x - kNoteHalfWidth + 6) + "\" y=\"" + num(first + i * (fs + 2)) + "\">" +
             xml_escape(lines[i]) + "</text>";
    }
    out += "</g>\n";
  }
  if (any_shapes) out += "  </g>\n";
  out += "</svg>\n";
  return out;
}

std::string render_card_svg(const Node& node, const Card& card, const Binding* binding, const Kernel& kernel,
                            const RenderTheme& theme) {
  const int fs = theme.font_size;
  const int line = fs + 6;
  const int pad = 16;
  constexpr int kBaseWidth = 300;
  constexpr int kBaseHeight = 420;
  constexpr int kHeader = 56;

  // Body rows, top to bottom.
  std::vector<std::string> body;
  int y = kHeader + pad + fs;
  auto text_row = [&](std::string_view cls, int x, std::string_view content, std::string_view extra = "") {
    body.push_back("<text class=\"" + std::string(cls) + "\" x=\"" + std::to_string(x) + "\" y=\"" +
                   std::to_string(y) + "\"" + std::string(extra) + ">" + xml_escape(content) + "</text>");
    y += line;
  };

  if (binding) {
    const Resolution res = resolve(kernel, binding->target);
    std::string text = "Kernel: " + binding->target.str();
    if (res) {
      text += " (" + res.element->name() + ", " + res.element->area() + ")";
    } else {
      text += " (unresolved)";
    }
    text_row("binding", pad, text, " font-style=\"italic\"");
    y += line / 2;
  }
  if (!card.description.empty()) {
    for (const auto& l : split_lines(card.description)) text_row("description", pad, l);
    y += line / 2;
  }
  for (const auto& item : card.items) {
    body.push_back("<rect class=\"check\" x=\"" + std::to_string(pad) + "\" y=\"" + std::to_string(y - fs + 2) +
                   "\" width=\"" + std::to_string(fs - 2) + "\" height=\"" + std::to_string(fs - 2) +
                   "\" fill=\"none\" stroke=\"" + std::string(kStroke) + "\"/>");
    text_row("item", pad + fs + 4, item);
  }
  if (!card.links.empty()) {
    y += line / 2;
    for (std::size_t i = 0; i < card.links.size(); ++i) {
      text_row("link", pad, "[" + std::to_string(i + 1) + "] " + card.links[i],
               " font-size=\"" + std::to_string(std::max(fs - 2, 6)) + "\"");
    }
  }

  const int height = std::max(kBaseHeight, y + pad);
  const int width = height * kBaseWidth / kBaseHeight;
  const auto glyph = theme.glyphs.count(node.kind) ? theme.glyphs.at(node.kind) : Glyph::Circle;
  const std::string band = theme.fill(node.area);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 " + std::to_string(width) + " " +
         std::to_string(height) + "\" width=\"" + std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" font-family=\"sans-serif\" font-size=\"" + std::to_string(fs) + "\">\n";
  out += "  <title>" + xml_escape(node.name) + "</title>\n";
  out += "  <g class=\"card\" data-id=\"" + node.id + "\">\n";
  out += "    <rect x=\"1\" y=\"1\" width=\"" + std::to_string(width - 2) + "\" height=\"" + std::to_string(height - 2) +
         "\" rx=\"8\" fill=\"" + std::string(kWhite) + "\" stroke=\"" + std::string(kStroke) + "\"/>\n";
  out += "    <g class=\"header\"><rect x=\"1\" y=\"1\" width=\"" + std::to_string(width - 2) + "\" height=\"" +
         std::to_string(kHeader) + "\" fill=\"" + band + "\" stroke=\"" + std::string(kStroke) + "\"/>";
  out += glyph_shape(glyph, pad + 20, 1 + kHeader / 2.0, 20, 10, band);
  out += "<text class=\"name\" x=\"" + std::to_string(pad + 48) + "\" y=\"" + std::to_string(kHeader / 2) +
         "\" font-size=\"" + std::to_string(fs + 4) + "\" font-weight=\"bold\">" + xml_escape(node.name) + "</text>";
  out += "<text class=\"kind\" x=\"" + std::to_string(pad + 48) + "\" y=\"" + std::to_string(kHeader / 2 + fs + 4) +
         "\">" + std::string(to_string(node.kind)) + "</text></g>\n";
  for (const auto& row : body) out += "    " + row + "\n";
  out += "  </g>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace essencery::render
