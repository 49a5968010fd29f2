#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sublevelstat {

/// 17 significant digits ("%.17g"), which round-trips every double;
/// infinities print as "inf" / "-inf".
std::string format_real(double x);

/// Parses a real written by format_real (also accepts "inf"). Throws
/// ParseError tagged with `line` on garbage or trailing characters.
double parse_real(std::string_view text, std::size_t line = 0);

std::uint64_t parse_u64(std::string_view text, std::size_t line = 0);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

std::string to_hex(std::uint64_t value);

std::string_view trim(std::string_view s) noexcept;

std::vector<std::string> split(std::string_view s, char sep);

} // namespace sublevelstat
