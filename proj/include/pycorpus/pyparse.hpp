#pragma once

// Python 2.7 parsing and canonical unparsing.

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pycorpus/ast.hpp"

namespace pycorpus {

class ParseFailure : public std::runtime_error {
 public:
  ParseFailure(std::string path, int line, std::string reason);

  [[nodiscard]] const std::string& path() const noexcept { return path_; }
  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] const std::string& reason() const noexcept { return reason_; }

 private:
  std::string path_;
  int line_;
  std::string reason_;
};

struct ParseOptions {
  // Start with `print` as an ordinary name, as after
  // `from __future__ import print_function`.
  bool print_function = false;
};

/// Parses a whole module. Comments are dropped by the tokenizer and never
/// reach the tree. Throws ParseFailure on invalid UTF-8, tokenizer errors and
/// anything outside the Python 2.7 grammar.
[[nodiscard]] ModuleTree parse_module(std::string_view source, std::string source_path,
                                      ParseOptions options = {});

struct CanonicalLine {
  int indent = 0;
  std::string text;

  friend bool operator==(const CanonicalLine&, const CanonicalLine&) = default;
};

/// Canonical surface form, one statement or compound header per line.
/// Statement trees start at their own indent_level.
[[nodiscard]] std::vector<CanonicalLine> unparse_canonical(const Stmt& stmt);
[[nodiscard]] std::vector<CanonicalLine> unparse_canonical(const ModuleTree& tree);
[[nodiscard]] std::vector<CanonicalLine> unparse_block(std::span<const Stmt> body, int indent);

/// Just the decorator lines and the `def`/`class` header of a definition.
[[nodiscard]] std::vector<CanonicalLine> unparse_header(const Stmt& definition);

[[nodiscard]] std::string unparse_expr(const Expr& expr);

/// Source text for canonical lines: four spaces per indent level, LF after
/// every line.
[[nodiscard]] std::string render(std::span<const CanonicalLine> lines);

}  // namespace pycorpus
