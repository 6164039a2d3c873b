#include "essencery/utf8.hpp"

namespace essencery::utf8 {

std::size_t sequence_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if (lead >= 0xC2 && lead <= 0xDF) return 2;
  if (lead >= 0xE0 && lead <= 0xEF) return 3;
  if (lead >= 0xF0 && lead <= 0xF4) return 4;
  return 0;
}

std::optional<std::size_t> first_invalid(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    const std::size_t len = sequence_length(lead);
    if (len == 0 || i + len > text.size()) return i;
    for (std::size_t k = 1; k < len; ++k) {
      const auto c = static_cast<unsigned char>(text[i + k]);
      if ((c & 0xC0) != 0x80) return i;
    }
    if (len == 3) {
      const auto c1 = static_cast<unsigned char>(text[i + 1]);
      if (lead == 0xE0 && c1 < 0xA0) return i;   // overlong
      if (lead == 0xED && c1 >= 0xA0) return i;  // surrogate
    } else if (len == 4) {
      const auto c1 = static_cast<unsigned char>(text[i + 1]);
      if (lead == 0xF0 && c1 < 0x90) return i;
      if (lead == 0xF4 && c1 >= 0x90) return i;  // > U+10FFFF
    }
    i += len;
  }
  return std::nullopt;
}

std::size_t length(std::string_view text) {
  std::size_t n = 0;
  for (const char c : text) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

}  // namespace essencery::utf8
