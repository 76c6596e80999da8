#include "pycorpus/bleu.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <vector>

#include "pycorpus/subtok.hpp"

namespace pycorpus {
namespace {

using Ngram = std::vector<std::string_view>;

std::map<Ngram, std::uint64_t> ngram_counts(const std::vector<std::string>& tokens, std::size_t n) {
  std::map<Ngram, std::uint64_t> counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Ngram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                   tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

BleuReport corpus_bleu(std::span<const std::string> candidates, std::span<const std::string> references) {
  if (candidates.size() != references.size()) {
    throw BleuInputError("candidate file has " + std::to_string(candidates.size()) +
                         " lines but reference file has " + std::to_string(references.size()));
  }
  if (candidates.empty()) throw BleuInputError("empty corpus");
  BleuReport r;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto cand = split_whitespace(candidates[i]);
    const auto ref = split_whitespace(references[i]);
    r.candidate_length += cand.size();
    r.reference_length += ref.size();
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto c = ngram_counts(cand, n);
      const auto rc = ngram_counts(ref, n);
      for (const auto& [gram, count] : c) {
        r.totals[n - 1] += count;
        auto it = rc.find(gram);
        if (it != rc.end()) r.matches[n - 1] += std::min(count, it->second);
      }
    }
  }
  double log_sum = 0;
  bool zero = false;
  for (std::size_t n = 0; n < 4; ++n) {
    if (r.totals[n] == 0 || r.matches[n] == 0) {
      r.precisions[n] = 0;
      zero = true;
      continue;
    }
    r.precisions[n] = static_cast<double>(r.matches[n]) / static_cast<double>(r.totals[n]);
    log_sum += std::log(r.precisions[n]);
  }
  if (r.candidate_length < r.reference_length) {
    r.brevity_penalty = r.candidate_length == 0
                            ? 0.0
                            : std::exp(1.0 - static_cast<double>(r.reference_length) /
                                                 static_cast<double>(r.candidate_length));
  }
  r.bleu = zero ? 0.0 : 100.0 * r.brevity_penalty * std::exp(log_sum / 4.0);
  return r;
}

std::string format_bleu_line(const BleuReport& r) {
  const double ratio = r.reference_length == 0 ? 0.0
                                               : static_cast<double>(r.candidate_length) /
                                                     static_cast<double>(r.reference_length);
  char buf[256];
  std::snprintf(buf, sizeof buf, "BLEU = %.2f, %.1f/%.1f/%.1f/%.1f (BP=%.3f, ratio=%.3f, hyp_len=%llu, ref_len=%llu)",
                r.bleu, 100 * r.precisions[0], 100 * r.precisions[1], 100 * r.precisions[2],
                100 * r.precisions[3], r.brevity_penalty, ratio,
                static_cast<unsigned long long>(r.candidate_length),
                static_cast<unsigned long long>(r.reference_length));
  return buf;
}

std::string format_bleu_key_values(const BleuReport& r) {
  std::string out;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", r.bleu);
  out += std::string("bleu=") + buf + "\n";
  out += "bleu_exact=" + shortest(r.bleu) + "\n";
  for (std::size_t n = 0; n < 4; ++n) {
    const std::string k = "p" + std::to_string(n + 1);
    out += k + "=" + shortest(r.precisions[n]) + "\n";
    out += k + "_matches=" + std::to_string(r.matches[n]) + "\n";
    out += k + "_total=" + std::to_string(r.totals[n]) + "\n";
  }
  out += "brevity_penalty=" + shortest(r.brevity_penalty) + "\n";
  out += "hyp_len=" + std::to_string(r.candidate_length) + "\n";
  out += "ref_len=" + std::to_string(r.reference_length) + "\n";
  return out;
}

}  // namespace pycorpus
