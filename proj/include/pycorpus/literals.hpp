#pragma once

// Python 2.7 literal decoding and canonical rendering.
//
// Unicode literal values are kept as a sequence of code points encoded in an
// extended UTF-8 that also admits lone surrogates. A `\N{NAME}` escape is not
// resolved (no character database); it is stored as kNamedEscapeOpen, the
// name's characters, and kNamedEscapeClose, and rendered back verbatim.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pycorpus/ast.hpp"

namespace pycorpus::literals {

inline constexpr char32_t kNamedEscapeOpen = 0x110000;
inline constexpr char32_t kNamedEscapeClose = 0x110001;

struct StringLiteral {
  bool is_unicode = false;
  std::string value;  // bytes for str, extended UTF-8 for unicode
};

/// Decodes one string token (prefix, quotes and body). `error` receives a
/// message and the result is empty on an invalid escape.
[[nodiscard]] std::optional<StringLiteral> decode_string(std::string_view token,
                                                         std::string& error);

/// Joins adjacent literals the way the compiler does: any unicode part makes
/// the result unicode.
[[nodiscard]] StringLiteral concatenate(const std::vector<StringLiteral>& parts);

/// Numeric token to a literal node (Int, Long, Float or Imaginary).
[[nodiscard]] std::optional<Expr> decode_number(std::string_view token, std::string& error);

/// Shortest round-trip repr of a double in the CPython 2.7 style:
/// "0.0", "1e+16", "1e-05". Infinity renders as "1e309".
[[nodiscard]] std::string float_repr(double value);

/// Arbitrary-precision conversion of digits in `base` to decimal.
[[nodiscard]] std::string to_decimal(std::string_view digits, int base);

[[nodiscard]] std::string render_str(std::string_view bytes);
[[nodiscard]] std::string render_unicode(std::string_view extended_utf8);

/// Literal value as plain UTF-8 text (for docstrings). Invalid bytes and
/// surrogates become U+FFFD.
[[nodiscard]] std::string to_display_text(const Expr& string_literal);

std::vector<char32_t> decode_extended_utf8(std::string_view s);
void append_extended_utf8(std::string& out, char32_t cp);

/// Validates UTF-8 strictly (no surrogates, no overlongs). Returns the byte
/// offset of the first bad sequence or npos.
[[nodiscard]] std::size_t find_invalid_utf8(std::string_view s);

}  // namespace pycorpus::literals
