#include "tokenizer.hpp"

#include <array>
#include <cctype>

#include "pycorpus/pyparse.hpp"

namespace pycorpus::detail {
namespace {

constexpr std::array<std::string_view, 5> kOps3 = {"**=", "//=", ">>=", "<<=", "..."};
constexpr std::array<std::string_view, 17> kOps2 = {"<>", "!=", "==", "<=", ">=", "**",
                                                    "//", "<<", ">>", "+=", "-=", "*=",
                                                    "/=", "%=", "&=", "|=", "^="};
constexpr std::string_view kOps1 = "()[]{}:,;+-*/%&|^~<>=.`@";

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_string_prefix(std::string_view word) {
  if (word.empty() || word.size() > 2) return false;
  std::string lower;
  for (char c : word) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return lower == "u" || lower == "r" || lower == "b" || lower == "ur" || lower == "br";
}

class Tokenizer {
 public:
  Tokenizer(std::string_view source, const std::string& path) : path_(path) {
    text_.reserve(source.size() + 1);
    for (std::size_t i = 0; i < source.size(); ++i) {
      if (source[i] == '\r') {
        text_ += '\n';
        if (i + 1 < source.size() && source[i + 1] == '\n') ++i;
      } else {
        text_ += source[i];
      }
    }
  }

  std::vector<Token> run() {
    while (true) {
      if (at_line_start_ && depth_ == 0) {
        if (!handle_indentation()) break;
        continue;
      }
      skip_blanks();
      if (pos_ >= text_.size()) break;
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      if (c == '\\') {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') {
          pos_ += 2;
          ++line_;
          if (pos_ >= text_.size()) fail("unexpected EOF after line continuation");
          continue;
        }
        fail("unexpected character after line continuation character");
      }
      if (c == '\n') {
        ++pos_;
        if (depth_ == 0) {
          push(TokenType::Newline, "", line_);
          at_line_start_ = true;
        }
        ++line_;
        continue;
      }
      if (is_ident_start(c)) {
        scan_name_or_string();
      } else if (is_digit(c) || (c == '.' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1]))) {
        scan_number();
      } else if (c == '\'' || c == '"') {
        scan_string(pos_);
      } else {
        scan_operator();
      }
    }
    if (depth_ > 0) fail("unexpected EOF in multi-line statement");
    if (!tokens_.empty() && tokens_.back().type != TokenType::Newline &&
        tokens_.back().type != TokenType::Dedent && tokens_.back().type != TokenType::Indent) {
      push(TokenType::Newline, "", line_);
    }
    while (indents_.size() > 1) {
      indents_.pop_back();
      push(TokenType::Dedent, "", line_);
    }
    push(TokenType::End, "", line_);
    return std::move(tokens_);
  }

 private:
  [[noreturn]] void fail(const std::string& reason) const { throw ParseFailure(path_, line_, reason); }

  void push(TokenType type, std::string text, int line) {
    tokens_.push_back(Token{type, std::move(text), line});
  }

  void skip_blanks() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\f'))
      ++pos_;
  }

  // Returns false at end of input.
  bool handle_indentation() {
    int col = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ') ++col;
      else if (c == '\t') col = (col / 8 + 1) * 8;
      else if (c == '\f') col = 0;
      else break;
      ++pos_;
    }
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    if (c == '#' || c == '\n') {
      while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      if (pos_ < text_.size()) {
        ++pos_;
        ++line_;
      }
      return pos_ < text_.size();
    }
    if (c == '\\' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') {
      // A continuation at the very start of a logical line joins with the next.
      pos_ += 2;
      ++line_;
      return true;
    }
    at_line_start_ = false;
    if (col > indents_.back()) {
      indents_.push_back(col);
      push(TokenType::Indent, "", line_);
    } else {
      while (col < indents_.back()) {
        indents_.pop_back();
        push(TokenType::Dedent, "", line_);
      }
      if (col != indents_.back()) fail("unindent does not match any outer indentation level");
    }
    return true;
  }

  void scan_name_or_string() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    std::string_view word(text_.data() + start, pos_ - start);
    if (pos_ < text_.size() && (text_[pos_] == '\'' || text_[pos_] == '"') && is_string_prefix(word)) {
      scan_string(start);
      return;
    }
    if (pos_ < text_.size() && static_cast<unsigned char>(text_[pos_]) >= 0x80)
      fail("non-ASCII character in identifier");
    push(TokenType::Name, std::string(word), line_);
  }

  void scan_number() {
    const std::size_t start = pos_;
    auto digits = [&](auto pred) {
      while (pos_ < text_.size() && pred(text_[pos_])) ++pos_;
    };
    const bool radix = text_[pos_] == '0' && pos_ + 1 < text_.size() &&
                       std::string_view("xXoObB").find(text_[pos_ + 1]) != std::string_view::npos;
    if (radix) {
      pos_ += 2;
      digits([](char ch) { return std::isxdigit(static_cast<unsigned char>(ch)) != 0; });
      if (pos_ < text_.size() && (text_[pos_] == 'l' || text_[pos_] == 'L')) ++pos_;
    } else {
      digits(is_digit);
      if (pos_ < text_.size() && text_[pos_] == '.') {
        ++pos_;
        digits(is_digit);
      }
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t save = pos_;
        ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        if (pos_ < text_.size() && is_digit(text_[pos_])) digits(is_digit);
        else pos_ = save;
      }
      if (pos_ < text_.size() && std::string_view("jJlL").find(text_[pos_]) != std::string_view::npos) ++pos_;
    }
    if (pos_ < text_.size() && is_ident_char(text_[pos_])) fail("invalid syntax in numeric literal");
    push(TokenType::Number, text_.substr(start, pos_ - start), line_);
  }

  // `start` is the first character of the prefix (or the quote).
  void scan_string(std::size_t start) {
    const int start_line = line_;
    const char quote = text_[pos_];
    const bool triple = text_.compare(pos_, 3, std::string(3, quote)) == 0;
    pos_ += triple ? 3 : 1;
    while (true) {
      if (pos_ >= text_.size()) {
        line_ = start_line;
        fail(triple ? "EOF while scanning triple-quoted string literal"
                    : "EOL while scanning string literal");
      }
      const char c = text_[pos_];
      if (c == '\\') {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') ++line_;
        pos_ += 2;
        continue;
      }
      if (c == '\n') {
        if (!triple) fail("EOL while scanning string literal");
        ++line_;
        ++pos_;
        continue;
      }
      if (c == quote) {
        if (!triple) {
          ++pos_;
          break;
        }
        if (text_.compare(pos_, 3, std::string(3, quote)) == 0) {
          pos_ += 3;
          break;
        }
      }
      ++pos_;
    }
    push(TokenType::String, text_.substr(start, pos_ - start), start_line);
  }

  void scan_operator() {
    std::string_view rest(text_.data() + pos_, text_.size() - pos_);
    for (auto op : kOps3) {
      if (rest.starts_with(op)) return emit_op(op);
    }
    for (auto op : kOps2) {
      if (rest.starts_with(op)) return emit_op(op);
    }
    if (kOps1.find(rest[0]) != std::string_view::npos) return emit_op(rest.substr(0, 1));
    if (static_cast<unsigned char>(rest[0]) >= 0x80) fail("non-ASCII character outside string literal");
    fail(std::string("invalid character '") + rest[0] + "'");
  }

  void emit_op(std::string_view op) {
    if (op == "(" || op == "[" || op == "{") ++depth_;
    if (op == ")" || op == "]" || op == "}") {
      if (depth_ == 0) fail("unmatched '" + std::string(op) + "'");
      --depth_;
    }
    pos_ += op.size();
    push(TokenType::Op, std::string(op), line_);
  }

  const std::string& path_;
  std::string text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int depth_ = 0;
  bool at_line_start_ = true;
  std::vector<int> indents_{0};
  std::vector<Token> tokens_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source, const std::string& path) {
  return Tokenizer(source, path).run();
}

}  // namespace pycorpus::detail
