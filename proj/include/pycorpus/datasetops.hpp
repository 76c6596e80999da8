#pragma once

// Corpus-level operations: deduplication, splitting, statistics and
// backtranslation assembly.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pycorpus/serialize.hpp"

namespace pycorpus {

/// First occurrence of each (decl, docstring, body) wins; metadata is not
/// part of the key. Relative order is kept.
[[nodiscard]] std::vector<CorpusTriple> dedup(std::span<const CorpusTriple> triples);

struct SplitSpec {
  std::size_t valid_size = 0;
  std::size_t test_size = 0;
  std::uint64_t seed = 0;
};

class SpecTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SplitResult {
  std::vector<CorpusTriple> train;
  std::vector<CorpusTriple> valid;
  std::vector<CorpusTriple> test;
};

/// Uniform integer in [0, bound) from a 64-bit Mersenne Twister, by
/// rejection so every value is equally likely.
[[nodiscard]] std::uint64_t bounded_draw(std::uint64_t bound, std::mt19937_64& rng);

/// Fisher-Yates permutation of 0..n-1: for i = n-1 down to 1, swap i with
/// bounded_draw(i + 1), using std::mt19937_64 seeded with `seed`.
[[nodiscard]] std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

/// Shuffles, then takes test, then valid; the rest is train. Throws
/// SpecTooLarge when valid_size + test_size exceeds the corpus.
[[nodiscard]] SplitResult split(std::span<const CorpusTriple> triples, const SplitSpec& spec);

struct Summary {
  std::size_t count = 0;
  std::uint64_t total = 0;
  double mean = 0;
  double stddev = 0;       // population
  std::uint64_t median = 0;  // lower median for even counts
};

[[nodiscard]] Summary summarize(std::span<const std::uint64_t> values);

/// Whitespace-separated tokens, markers included.
[[nodiscard]] std::uint64_t count_tokens(std::string_view line);
/// 1 + number of DCNL tokens.
[[nodiscard]] std::uint64_t count_locs(std::string_view line);

struct ElementStats {
  std::string name;  // "declarations", "bodies", "docstrings"
  Summary tokens;
  std::optional<std::uint64_t> locs;  // absent for docstrings
};

struct StatsReport {
  std::size_t examples = 0;
  std::vector<ElementStats> elements;
};

[[nodiscard]] StatsReport compute_stats(std::span<const CorpusTriple> triples);
[[nodiscard]] StatsReport compute_stats(const CorpusFiles& corpus);

/// total tokens == per-example counts summed, and mean * examples rounds to
/// the total.
[[nodiscard]] bool consistent(const StatsReport& report);

/// Table in the style of a corpus-size table followed by a per-example one.
[[nodiscard]] std::string format_stats_table(const StatsReport& report);
/// One `key=value` per line.
[[nodiscard]] std::string format_stats_key_values(const StatsReport& report);

struct AssembleReport {
  std::size_t parallel = 0;
  std::size_t synthetic = 0;
  std::size_t combined = 0;
};

/// Parallel corpus followed by code-only examples paired with synthetic
/// docstrings (one per line of `synthetic_docstrings`). `provenance` gets
/// "parallel" or "synthetic" per output example. Throws CorpusError when the
/// synthetic line count differs from the code-only corpus size.
AssembleReport assemble_backtranslation(const CorpusFiles& parallel, const CorpusFiles& code_only,
                                        const std::filesystem::path& synthetic_docstrings,
                                        const CorpusFiles& out,
                                        const std::filesystem::path& provenance);

}  // namespace pycorpus
