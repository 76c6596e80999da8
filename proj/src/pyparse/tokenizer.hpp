#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pycorpus::detail {

enum class TokenType { Name, Number, String, Op, Newline, Indent, Dedent, End };

struct Token {
  TokenType type = TokenType::End;
  std::string text;
  int line = 0;
};

/// Splits Python 2.7 source into tokens. Comments and blank lines produce
/// nothing; indentation is resolved to Indent/Dedent (tabs advance to the
/// next multiple of 8). Throws ParseFailure.
std::vector<Token> tokenize(std::string_view source, const std::string& path);

}  // namespace pycorpus::detail
