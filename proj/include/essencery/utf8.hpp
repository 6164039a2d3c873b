#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace essencery::utf8 {

/// Returns the byte offset of the first malformed sequence, or nullopt when
/// the whole input is well-formed UTF-8 (no overlongs, no surrogates).
std::optional<std::size_t> first_invalid(std::string_view text);

inline bool valid(std::string_view text) { return !first_invalid(text).has_value(); }

/// Length in bytes of the sequence introduced by `lead`, or 0 if `lead` cannot
/// start a sequence.
std::size_t sequence_length(unsigned char lead);

/// Number of code points in a well-formed string.
std::size_t length(std::string_view text);

}  // namespace essencery::utf8
