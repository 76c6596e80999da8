#pragma once

// Punctuation splitting and byte-pair encoding.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pycorpus {

[[nodiscard]] const std::set<std::string, std::less<>>& default_protected_tokens();

/// Whitespace split, then every character that is not a letter or digit
/// becomes a token of its own. Bytes >= 0x80 count as letters, so UTF-8
/// text is never cut inside a character. Protected tokens pass unchanged.
[[nodiscard]] std::vector<std::string> punct_split(
    std::string_view line,
    const std::set<std::string, std::less<>>& protected_tokens = default_protected_tokens());

using SymbolPair = std::pair<std::string, std::string>;

inline constexpr std::string_view kEndOfWord = "</w>";

struct BpeModel {
  std::vector<SymbolPair> merges;
  std::string continuation_marker = "@@";
  std::string version = "0.2";
};

class MalformedSequence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// UTF-8 characters of a token, with kEndOfWord appended to the last one.
[[nodiscard]] std::vector<std::string> initial_symbols(std::string_view token);

/// Repeatedly merges the most frequent adjacent pair (ties: smallest
/// (left, right)), stopping after `num_merges` or when no pair occurs twice.
[[nodiscard]] BpeModel bpe_learn(const std::map<std::string, std::uint64_t>& token_frequencies,
                                 std::size_t num_merges);

/// Token frequencies of whitespace-split lines, protected tokens excluded.
[[nodiscard]] std::map<std::string, std::uint64_t> count_tokens_for_bpe(
    std::span<const std::string> lines,
    const std::set<std::string, std::less<>>& protected_tokens = default_protected_tokens());

class BpeEncoder {
 public:
  explicit BpeEncoder(BpeModel model,
                      std::set<std::string, std::less<>> protected_tokens = default_protected_tokens());

  [[nodiscard]] const BpeModel& model() const noexcept { return model_; }

  /// Subtokens of one token; all but the last carry the continuation marker.
  [[nodiscard]] std::vector<std::string> encode(const std::string& token) const;
  [[nodiscard]] std::vector<std::string> apply(std::span<const std::string> tokens) const;

  /// apply() for a line, or nothing when the result would not revert to the
  /// input (a token that itself ends in the continuation marker).
  [[nodiscard]] std::optional<std::vector<std::string>> apply_checked(std::span<const std::string> tokens) const;

 private:
  BpeModel model_;
  std::set<std::string, std::less<>> protected_;
  std::map<SymbolPair, std::size_t> ranks_;
  mutable std::unordered_map<std::string, std::vector<std::string>> cache_;
};

[[nodiscard]] std::vector<std::string> bpe_apply(const BpeModel& model, std::span<const std::string> tokens);

/// Joins subtokens back into tokens. Throws MalformedSequence when the last
/// subtoken still carries the continuation marker.
[[nodiscard]] std::vector<std::string> bpe_revert(std::span<const std::string> subtokens,
                                                  std::string_view continuation_marker = "@@");

[[nodiscard]] std::string format_model(const BpeModel& model);
[[nodiscard]] BpeModel parse_model(std::string_view text);
void save_model(const BpeModel& model, const std::filesystem::path& path);
[[nodiscard]] BpeModel load_model(const std::filesystem::path& path);

[[nodiscard]] std::vector<std::string> split_whitespace(std::string_view line);
[[nodiscard]] std::string join_tokens(std::span<const std::string> tokens);

}  // namespace pycorpus
