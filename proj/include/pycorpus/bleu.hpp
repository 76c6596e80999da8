#pragma once

// Corpus BLEU with the conventions of multi-bleu.perl: single reference,
// case-sensitive, orders 1-4, no smoothing.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace pycorpus {

class BleuInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BleuReport {
  double bleu = 0;  // 0-100
  std::array<double, 4> precisions{};
  std::array<std::uint64_t, 4> matches{};
  std::array<std::uint64_t, 4> totals{};
  double brevity_penalty = 1;
  std::uint64_t candidate_length = 0;
  std::uint64_t reference_length = 0;
};

/// Lines are split on whitespace as-is. Throws BleuInputError on a line-count
/// mismatch or an empty corpus.
[[nodiscard]] BleuReport corpus_bleu(std::span<const std::string> candidates,
                                     std::span<const std::string> references);

/// "BLEU = 14.03, 40.1/18.2/10.0/6.1 (BP=1.000, ratio=1.012, hyp_len=..., ref_len=...)"
[[nodiscard]] std::string format_bleu_line(const BleuReport& report);
[[nodiscard]] std::string format_bleu_key_values(const BleuReport& report);

}  // namespace pycorpus
