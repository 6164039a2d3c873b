#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "essencery/graph.hpp"
#include "essencery/kernel.hpp"

namespace essencery::render {

enum class Glyph {
  Circle,           // alpha
  ChevronPentagon,  // activity space
  ArrowRectangle,   // activity
  FoldedRectangle,  // work product
  ShieldPentagon,   // competency
  Diamond,          // pattern
};

struct RenderTheme {
  std::map<Area, std::string> area_fill;  // CSS colors
  std::map<NodeKind, Glyph> glyphs;
  int font_size = 12;
  int margin = 20;

  /// Green customer, yellow solution, blue endeavor.
  static RenderTheme standard();
  /// Standard glyphs with area colors taken from the kernel's color tokens.
  static RenderTheme from_kernel(const Kernel& kernel);

  std::string fill(std::optional<Area> area) const;
};

/// CSS fill for a kernel color token; unknown tokens pass through unchanged.
std::string color_for_token(std::string_view token);

/// Glyphs are fixed 120x60 boxes centred on the node position.
inline constexpr int kGlyphHalfWidth = 60;
inline constexpr int kGlyphHalfHeight = 30;

/// Self-contained SVG 1.1. One `<g data-id=...>` per node and note, one
/// `<path class="relation">` per relation (arrowhead iff directed). Byte
/// deterministic for a given graph and theme.
std::string render_graph_svg(const Graph& graph, const RenderTheme& theme);

/// Portrait practice card for `node`. `binding` may be null.
std::string render_card_svg(const Node& node, const Card& card, const Binding* binding, const Kernel& kernel,
                            const RenderTheme& theme);

}  // namespace essencery::render
