#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace nomasim::csv {

/// Locale-independent number formatting through std::to_chars: general
/// format, 9 significant digits, trailing zeros stripped. Byte-stable across
/// runs and environments.
std::string format_double(double value);

std::string format_u64(std::uint64_t value);
std::string format_long(long value);

/// FNV-1a over the bytes of text.
std::uint64_t fnv1a64(std::string_view text);

/// Lower-case, zero-padded 16-digit hex.
std::string hex16(std::uint64_t value);

}  // namespace nomasim::csv
