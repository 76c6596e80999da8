#include "pycorpus/literals.hpp"

#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace pycorpus::literals {
namespace {

bool is_oct(char c) { return c >= '0' && c <= '7'; }

int hex_value(char32_t c) {
  if (c >= '0' && c <= '9') return static_cast<int>(c - '0');
  if (c >= 'a' && c <= 'f') return static_cast<int>(c - 'a' + 10);
  if (c >= 'A' && c <= 'F') return static_cast<int>(c - 'A' + 10);
  return -1;
}

void append_hex(std::string& out, const char* prefix, unsigned long value, int width) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%0*lx", width, value);
  out += prefix;
  out += buf;
}

// Decodes UTF-8 that is known to be valid, falling back to one code point
// per byte (Latin-1) on malformed input.
std::vector<char32_t> decode_lenient(std::string_view s) {
  if (find_invalid_utf8(s) == std::string_view::npos) return decode_extended_utf8(s);
  std::vector<char32_t> out;
  out.reserve(s.size());
  for (unsigned char c : s) out.push_back(c);
  return out;
}

struct Split {
  bool is_unicode = false;
  bool raw = false;
  std::string_view body;
};

std::optional<Split> split_token(std::string_view token) {
  Split split;
  std::size_t i = 0;
  while (i < token.size() && token[i] != '\'' && token[i] != '"') {
    char c = static_cast<char>(std::tolower(static_cast<unsigned char>(token[i])));
    if (c == 'u') split.is_unicode = true;
    else if (c == 'r') split.raw = true;
    else if (c != 'b') return std::nullopt;
    ++i;
  }
  std::string_view rest = token.substr(i);
  std::size_t q = 1;
  if (rest.size() >= 6 && (rest.starts_with("'''") || rest.starts_with("\"\"\""))) q = 3;
  if (rest.size() < 2 * q) return std::nullopt;
  split.body = rest.substr(q, rest.size() - 2 * q);
  return split;
}

// Escape processing shared by str and unicode literals. `units` is the
// literal body as bytes (str) or code points (unicode); output code units are
// appended through `emit`.
template <typename Unit, typename Emit>
bool process_escapes(const std::vector<Unit>& units, bool is_unicode, Emit&& emit,
                     std::string& error) {
  const std::size_t n = units.size();
  for (std::size_t i = 0; i < n; ++i) {
    Unit c = units[i];
    if (c != '\\' || i + 1 == n) {
      emit(static_cast<char32_t>(c));
      continue;
    }
    Unit e = units[++i];
    switch (e) {
      case '\n': break;
      case '\\': emit(U'\\'); break;
      case '\'': emit(U'\''); break;
      case '"': emit(U'"'); break;
      case 'a': emit(7); break;
      case 'b': emit(8); break;
      case 'f': emit(12); break;
      case 'n': emit(10); break;
      case 'r': emit(13); break;
      case 't': emit(9); break;
      case 'v': emit(11); break;
      case '0': case '1': case '2': case '3': case '4': case '5': case '6': case '7': {
        unsigned value = static_cast<unsigned>(e - '0');
        for (int k = 0; k < 2 && i + 1 < n && units[i + 1] < 128 && is_oct(static_cast<char>(units[i + 1])); ++k)
          value = value * 8 + static_cast<unsigned>(units[++i] - '0');
        emit(is_unicode ? value : (value & 0xFFu));
        break;
      }
      case 'x': {
        int hi = i + 1 < n ? hex_value(static_cast<char32_t>(units[i + 1])) : -1;
        int lo = i + 2 < n ? hex_value(static_cast<char32_t>(units[i + 2])) : -1;
        if (hi < 0 || lo < 0) {
          error = "invalid \\x escape";
          return false;
        }
        emit(static_cast<char32_t>(hi * 16 + lo));
        i += 2;
        break;
      }
      case 'u':
      case 'U':
        if (is_unicode) {
          const std::size_t width = e == 'u' ? 4 : 8;
          char32_t value = 0;
          for (std::size_t k = 1; k <= width; ++k) {
            int d = i + k < n ? hex_value(static_cast<char32_t>(units[i + k])) : -1;
            if (d < 0) {
              error = "truncated \\uXXXX escape";
              return false;
            }
            value = value * 16 + static_cast<char32_t>(d);
          }
          if (value > 0x10FFFF) {
            error = "illegal Unicode character";
            return false;
          }
          emit(value);
          i += width;
          break;
        }
        emit(U'\\');
        emit(static_cast<char32_t>(e));
        break;
      case 'N':
        if (is_unicode) {
          if (i + 1 >= n || units[i + 1] != '{') {
            error = "malformed \\N character escape";
            return false;
          }
          std::size_t close = i + 2;
          while (close < n && units[close] != '}') ++close;
          if (close >= n || close == i + 2) {
            error = "malformed \\N character escape";
            return false;
          }
          emit(kNamedEscapeOpen);
          for (std::size_t k = i + 2; k < close; ++k) emit(static_cast<char32_t>(units[k]));
          emit(kNamedEscapeClose);
          i = close;
          break;
        }
        [[fallthrough]];
      default:
        emit(U'\\');
        emit(static_cast<char32_t>(e));
        break;
    }
  }
  return true;
}

// Raw unicode literals still honour \u and \U when preceded by an odd number
// of backslashes.
bool process_raw_unicode(const std::vector<char32_t>& units, std::string& out, std::string& error) {
  const std::size_t n = units.size();
  std::size_t i = 0;
  while (i < n) {
    if (units[i] != '\\') {
      append_extended_utf8(out, units[i++]);
      continue;
    }
    std::size_t run = 0;
    while (i + run < n && units[i + run] == '\\') ++run;
    for (std::size_t k = 0; k + 1 < run; ++k) append_extended_utf8(out, U'\\');
    i += run - 1;  // at the last backslash of the run
    if (run % 2 == 1 && i + 1 < n && (units[i + 1] == 'u' || units[i + 1] == 'U')) {
      const std::size_t width = units[i + 1] == 'u' ? 4 : 8;
      char32_t value = 0;
      for (std::size_t k = 0; k < width; ++k) {
        int d = i + 2 + k < n ? hex_value(units[i + 2 + k]) : -1;
        if (d < 0) {
          error = "truncated \\uXXXX escape";
          return false;
        }
        value = value * 16 + static_cast<char32_t>(d);
      }
      if (value > 0x10FFFF) {
        error = "illegal Unicode character";
        return false;
      }
      append_extended_utf8(out, value);
      i += 2 + width;
    } else {
      append_extended_utf8(out, U'\\');
      ++i;
    }
  }
  return true;
}

}  // namespace

std::size_t find_invalid_utf8(std::string_view s) {
  const auto* p = reinterpret_cast<const unsigned char*>(s.data());
  const std::size_t n = s.size();
  std::size_t i = 0;
  while (i < n) {
    unsigned char c = p[i];
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((c & 0xE0) == 0xC0) { len = 2; cp = c & 0x1F; min = 0x80; }
    else if ((c & 0xF0) == 0xE0) { len = 3; cp = c & 0x0F; min = 0x800; }
    else if ((c & 0xF8) == 0xF0) { len = 4; cp = c & 0x07; min = 0x10000; }
    else return i;
    if (i + len > n) return i;
    for (std::size_t k = 1; k < len; ++k) {
      if ((p[i + k] & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (p[i + k] & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return i;
    i += len;
  }
  return std::string_view::npos;
}

void append_extended_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | ((cp >> 18) & 0x07));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::vector<char32_t> decode_extended_utf8(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  const auto* p = reinterpret_cast<const unsigned char*>(s.data());
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = p[i];
    std::size_t len = c < 0x80 ? 1 : (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3 : 4;
    char32_t cp = len == 1 ? c : len == 2 ? (c & 0x1F) : len == 3 ? (c & 0x0F) : (c & 0x07);
    for (std::size_t k = 1; k < len && i + k < s.size(); ++k) cp = (cp << 6) | (p[i + k] & 0x3F);
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::optional<StringLiteral> decode_string(std::string_view token, std::string& error) {
  auto split = split_token(token);
  if (!split) {
    error = "malformed string literal";
    return std::nullopt;
  }
  StringLiteral lit;
  lit.is_unicode = split->is_unicode;
  if (!lit.is_unicode) {
    if (split->raw) {
      lit.value = std::string(split->body);
      return lit;
    }
    std::vector<unsigned char> units(split->body.begin(), split->body.end());
    bool ok = process_escapes(units, false, [&](char32_t u) { lit.value += static_cast<char>(u); }, error);
    if (!ok) return std::nullopt;
    return lit;
  }
  std::vector<char32_t> units = decode_lenient(split->body);
  if (split->raw) {
    if (!process_raw_unicode(units, lit.value, error)) return std::nullopt;
    return lit;
  }
  bool ok = process_escapes(units, true, [&](char32_t u) { append_extended_utf8(lit.value, u); }, error);
  if (!ok) return std::nullopt;
  return lit;
}

StringLiteral concatenate(const std::vector<StringLiteral>& parts) {
  StringLiteral out;
  for (const auto& p : parts) out.is_unicode = out.is_unicode || p.is_unicode;
  for (const auto& p : parts) {
    if (!out.is_unicode || p.is_unicode) {
      out.value += p.value;
      continue;
    }
    for (char32_t cp : decode_lenient(p.value)) append_extended_utf8(out.value, cp);
  }
  return out;
}

std::string to_decimal(std::string_view digits, int base) {
  // little-endian limbs of 10^9
  std::vector<std::uint32_t> limbs{0};
  for (char ch : digits) {
    int d = hex_value(static_cast<char32_t>(ch));
    std::uint64_t carry = static_cast<std::uint64_t>(d);
    for (auto& limb : limbs) {
      std::uint64_t v = static_cast<std::uint64_t>(limb) * static_cast<std::uint64_t>(base) + carry;
      limb = static_cast<std::uint32_t>(v % 1000000000u);
      carry = v / 1000000000u;
    }
    while (carry != 0) {
      limbs.push_back(static_cast<std::uint32_t>(carry % 1000000000u));
      carry /= 1000000000u;
    }
  }
  std::string out = std::to_string(limbs.back());
  for (std::size_t i = limbs.size() - 1; i-- > 0;) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%09u", limbs[i]);
    out += buf;
  }
  return out;
}

std::string float_repr(double value) {
  if (std::isinf(value)) return value < 0 ? "-1e309" : "1e309";
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::scientific);
  std::string sci(buf.data(), res.ptr);
  std::string sign;
  if (!sci.empty() && sci[0] == '-') {
    sign = "-";
    sci.erase(0, 1);
  }
  const std::size_t epos = sci.find('e');
  std::string mantissa = sci.substr(0, epos);
  const int exponent = std::atoi(sci.c_str() + epos + 1);
  std::string digits;
  for (char c : mantissa)
    if (c != '.') digits += c;
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

  const int decpt = exponent + 1;
  std::string out = sign;
  if (value == 0.0) return out + "0.0";
  if (decpt <= -4 || decpt > 16) {
    out += digits[0];
    if (digits.size() > 1) {
      out += '.';
      out.append(digits, 1);
    }
    char ebuf[16];
    std::snprintf(ebuf, sizeof ebuf, "e%c%02d", exponent < 0 ? '-' : '+', std::abs(exponent));
    return out + ebuf;
  }
  if (decpt <= 0) return out + "0." + std::string(static_cast<std::size_t>(-decpt), '0') + digits;
  const auto point = static_cast<std::size_t>(decpt);
  if (point >= digits.size()) return out + digits + std::string(point - digits.size(), '0') + ".0";
  return out + digits.substr(0, point) + "." + digits.substr(point);
}

std::optional<Expr> decode_number(std::string_view token, std::string& error) {
  std::string t(token);
  auto parse_float = [&](const std::string& text) -> std::optional<std::string> {
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || text.empty()) {
      error = "invalid number '" + std::string(token) + "'";
      return std::nullopt;
    }
    return float_repr(v);
  };

  if (!t.empty() && (t.back() == 'j' || t.back() == 'J')) {
    auto repr = parse_float(t.substr(0, t.size() - 1));
    if (!repr) return std::nullopt;
    return Expr(ExprKind::Imaginary, *repr);
  }
  ExprKind int_kind = ExprKind::Int;
  if (!t.empty() && (t.back() == 'l' || t.back() == 'L')) {
    int_kind = ExprKind::Long;
    t.pop_back();
  }
  const bool prefixed = t.size() > 1 && t[0] == '0' && std::strchr("xXoObB", t[1]) != nullptr;
  if (!prefixed && t.find_first_of(".eE") != std::string::npos) {
    if (int_kind == ExprKind::Long) {
      error = "invalid number '" + std::string(token) + "'";
      return std::nullopt;
    }
    auto repr = parse_float(t);
    if (!repr) return std::nullopt;
    return Expr(ExprKind::Float, *repr);
  }

  int base = 10;
  std::string_view digits = t;
  if (prefixed) {
    char p = static_cast<char>(std::tolower(static_cast<unsigned char>(t[1])));
    base = p == 'x' ? 16 : p == 'o' ? 8 : 2;
    digits.remove_prefix(2);
  } else if (t.size() > 1 && t[0] == '0') {
    base = 8;
    digits.remove_prefix(1);
  }
  if (digits.empty() && base != 8) {
    error = "invalid number '" + std::string(token) + "'";
    return std::nullopt;
  }
  for (char c : digits) {
    int d = hex_value(static_cast<char32_t>(c));
    if (d < 0 || d >= base) {
      error = "invalid number '" + std::string(token) + "'";
      return std::nullopt;
    }
  }
  return Expr(int_kind, digits.empty() ? std::string("0") : to_decimal(digits, base));
}

std::string render_str(std::string_view bytes) {
  std::string out = "'";
  for (unsigned char c : bytes) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\'': out += "\\'"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c >= 0x20 && c < 0x7F) out += static_cast<char>(c);
        else append_hex(out, "\\x", c, 2);
    }
  }
  out += '\'';
  return out;
}

std::string render_unicode(std::string_view extended_utf8) {
  std::string out = "u'";
  bool in_name = false;
  for (char32_t cp : decode_extended_utf8(extended_utf8)) {
    if (in_name) {
      if (cp == kNamedEscapeClose) {
        out += '}';
        in_name = false;
      } else {
        append_extended_utf8(out, cp);
      }
      continue;
    }
    switch (cp) {
      case '\\': out += "\\\\"; break;
      case '\'': out += "\\'"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default:
        if (cp == kNamedEscapeOpen) {
          out += "\\N{";
          in_name = true;
        } else if (cp >= 0x20 && cp < 0x7F) {
          out += static_cast<char>(cp);
        } else if (cp < 0x100) {
          append_hex(out, "\\x", cp, 2);
        } else if (cp < 0x10000) {
          append_hex(out, "\\u", cp, 4);
        } else {
          append_hex(out, "\\U", cp, 8);
        }
    }
  }
  out += '\'';
  return out;
}

std::string to_display_text(const Expr& string_literal) {
  std::string out;
  if (string_literal.kind == ExprKind::Str) {
    std::string_view s = string_literal.value;
    while (!s.empty()) {
      std::size_t bad = find_invalid_utf8(s);
      if (bad == std::string_view::npos) {
        out += s;
        break;
      }
      out += s.substr(0, bad);
      out += "\xEF\xBF\xBD";
      s.remove_prefix(bad + 1);
    }
    return out;
  }
  bool in_name = false;
  for (char32_t cp : decode_extended_utf8(string_literal.value)) {
    if (cp == kNamedEscapeOpen) {
      out += "\\N{";
      in_name = true;
    } else if (cp == kNamedEscapeClose && in_name) {
      out += '}';
      in_name = false;
    } else if ((cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
      out += "\xEF\xBF\xBD";
    } else {
      append_extended_utf8(out, cp);
    }
  }
  return out;
}

}  // namespace pycorpus::literals
