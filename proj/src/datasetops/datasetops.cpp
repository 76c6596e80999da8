#include "pycorpus/datasetops.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>

#include "pycorpus/textio.hpp"

namespace pycorpus {

std::vector<CorpusTriple> dedup(std::span<const CorpusTriple> triples) {
  using Key = std::tuple<std::string_view, std::optional<std::string_view>, std::string_view>;
  std::set<Key> seen;
  std::vector<CorpusTriple> out;
  for (const auto& t : triples) {
    std::optional<std::string_view> doc;
    if (t.docstring_line) doc = *t.docstring_line;
    if (seen.emplace(t.decl_line, doc, t.body_line).second) out.push_back(t);
  }
  return out;
}

std::uint64_t bounded_draw(std::uint64_t bound, std::mt19937_64& rng) {
  if (bound <= 1) return 0;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % bound;
}

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(bounded_draw(i, rng));
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

SplitResult split(std::span<const CorpusTriple> triples, const SplitSpec& spec) {
  const std::size_t n = triples.size();
  if (spec.valid_size > n || spec.test_size > n - spec.valid_size) {
    throw SpecTooLarge("split asks for " + std::to_string(spec.test_size) + " test + " +
                       std::to_string(spec.valid_size) + " valid examples but the corpus has " +
                       std::to_string(n));
  }
  const auto order = seeded_permutation(n, spec.seed);
  SplitResult out;
  for (std::size_t i = 0; i < n; ++i) {
    const CorpusTriple& t = triples[order[i]];
    if (i < spec.test_size) out.test.push_back(t);
    else if (i < spec.test_size + spec.valid_size) out.valid.push_back(t);
    else out.train.push_back(t);
  }
  return out;
}

Summary summarize(std::span<const std::uint64_t> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  for (auto v : values) s.total += v;
  s.mean = static_cast<double>(s.total) / static_cast<double>(s.count);
  long double sq = 0;
  const long double mean = static_cast<long double>(s.total) / s.count;
  for (auto v : values) {
    const long double d = static_cast<long double>(v) - mean;
    sq += d * d;
  }
  s.stddev = static_cast<double>(std::sqrt(sq / s.count));
  std::vector<std::uint64_t> sorted(values.begin(), values.end());
  const std::size_t mid = (s.count - 1) / 2;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
  s.median = sorted[mid];
  return s;
}

namespace {

template <typename F>
void for_each_token(std::string_view line, F&& f) {
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) f(line.substr(i, j - i));
    i = j;
  }
}

std::string number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string pad(std::string s, std::size_t width, bool right = true) {
  if (s.size() >= width) return s;
  return right ? std::string(width - s.size(), ' ') + s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::uint64_t count_tokens(std::string_view line) {
  std::uint64_t n = 0;
  for_each_token(line, [&](std::string_view) { ++n; });
  return n;
}

std::uint64_t count_locs(std::string_view line) {
  std::uint64_t n = 1;
  for_each_token(line, [&](std::string_view t) { n += t == kNewlineMarker; });
  return n;
}

StatsReport compute_stats(std::span<const CorpusTriple> triples) {
  StatsReport report;
  report.examples = triples.size();
  std::vector<std::uint64_t> decl, body, doc, decl_loc, body_loc;
  bool has_doc = !triples.empty() && triples.front().docstring_line.has_value();
  for (const auto& t : triples) {
    decl.push_back(count_tokens(t.decl_line));
    body.push_back(count_tokens(t.body_line));
    decl_loc.push_back(count_locs(t.decl_line));
    body_loc.push_back(count_locs(t.body_line));
    if (has_doc) doc.push_back(t.docstring_line ? count_tokens(*t.docstring_line) : 0);
  }
  auto sum = [](const std::vector<std::uint64_t>& v) { return std::accumulate(v.begin(), v.end(), std::uint64_t{0}); };
  report.elements.push_back({"declarations", summarize(decl), sum(decl_loc)});
  report.elements.push_back({"bodies", summarize(body), sum(body_loc)});
  if (has_doc) report.elements.push_back({"docstrings", summarize(doc), std::nullopt});
  return report;
}

StatsReport compute_stats(const CorpusFiles& corpus) { return compute_stats(read_corpus(corpus)); }

bool consistent(const StatsReport& report) {
  for (const auto& e : report.elements) {
    if (e.tokens.count != report.examples) return false;
    if (report.examples == 0) {
      if (e.tokens.total != 0) return false;
      continue;
    }
    const double product = e.tokens.mean * static_cast<double>(report.examples);
    if (std::llround(product) != static_cast<long long>(e.tokens.total)) return false;
  }
  return true;
}

std::string format_stats_table(const StatsReport& report) {
  std::string out;
  out += "Tokens are whitespace-separated with DCNL/DCSP markers counted; "
         "std is the population deviation; median of an even count is the lower middle value.\n\n";
  out += pad("", 14, false) + pad("Examples", 10) + pad("Tokens", 12) + pad("LoC", 12) + "\n";
  for (const auto& e : report.elements) {
    out += pad(e.name, 14, false) + pad(std::to_string(report.examples), 10) +
           pad(std::to_string(e.tokens.total), 12) + pad(e.locs ? std::to_string(*e.locs) : "-", 12) + "\n";
  }
  out += "\n" + pad("per example", 14, false) + pad("Mean", 10) + pad("Std", 10) + pad("Median", 10) + "\n";
  for (const auto& e : report.elements) {
    out += pad(e.name, 14, false) + pad(fixed(e.tokens.mean, 2), 10) + pad(fixed(e.tokens.stddev, 2), 10) +
           pad(std::to_string(e.tokens.median), 10) + "\n";
  }
  return out;
}

std::string format_stats_key_values(const StatsReport& report) {
  std::string out;
  out += "token_definition=whitespace_with_markers\n";
  out += "std_definition=population\n";
  out += "median_definition=lower\n";
  out += "examples=" + std::to_string(report.examples) + "\n";
  for (const auto& e : report.elements) {
    const std::string k = e.name + ".";
    out += k + "tokens=" + std::to_string(e.tokens.total) + "\n";
    if (e.locs) out += k + "locs=" + std::to_string(*e.locs) + "\n";
    out += k + "mean=" + number(e.tokens.mean) + "\n";
    out += k + "std=" + number(e.tokens.stddev) + "\n";
    out += k + "median=" + std::to_string(e.tokens.median) + "\n";
  }
  out += std::string("consistent=") + (consistent(report) ? "true" : "false") + "\n";
  return out;
}

AssembleReport assemble_backtranslation(const CorpusFiles& parallel, const CorpusFiles& code_only,
                                        const std::filesystem::path& synthetic_docstrings,
                                        const CorpusFiles& out,
                                        const std::filesystem::path& provenance) {
  if (!parallel.docstring_path || !out.docstring_path)
    throw CorpusError("backtranslation needs docstring files for the parallel and output corpora");
  const auto real = read_corpus(parallel);
  CorpusFiles code = code_only;
  code.docstring_path.reset();
  const auto code_triples = read_corpus(code);
  const auto synthetic = read_lines(synthetic_docstrings);
  if (synthetic.size() != code_triples.size()) {
    throw CorpusError("synthetic docstrings " + synthetic_docstrings.string() + " have " +
                      std::to_string(synthetic.size()) + " lines but the code-only corpus " +
                      code_only.decl_path.string() + " has " + std::to_string(code_triples.size()) +
                      " examples");
  }
  std::vector<CorpusTriple> combined = real;
  std::vector<std::string> tags(real.size(), "parallel");
  for (std::size_t i = 0; i < code_triples.size(); ++i) {
    CorpusTriple t = code_triples[i];
    t.docstring_line = synthetic[i];
    combined.push_back(std::move(t));
    tags.emplace_back("synthetic");
  }
  write_triples(combined, out);
  write_lines_atomic(provenance, tags);
  return {real.size(), code_triples.size(), combined.size()};
}

}  // namespace pycorpus
