#include "pycorpus/subtok.hpp"

#include <cctype>

#include "pycorpus/textio.hpp"

namespace pycorpus {
namespace {

bool is_word_byte(unsigned char c) { return c >= 0x80 || std::isalnum(c) != 0; }

std::size_t utf8_length(unsigned char lead) {
  if (lead >= 0xF0) return 4;
  if (lead >= 0xE0) return 3;
  if (lead >= 0xC0) return 2;
  return 1;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return !suffix.empty() && s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

const std::set<std::string, std::less<>>& default_protected_tokens() {
  static const std::set<std::string, std::less<>> tokens = {"DCNL", "DCSP"};
  return tokens;
}

std::vector<std::string> split_whitespace(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; };
  while (i < line.size()) {
    while (i < line.size() && space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !space(line[j])) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string join_tokens(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> punct_split(std::string_view line,
                                     const std::set<std::string, std::less<>>& protected_tokens) {
  std::vector<std::string> out;
  for (const std::string& token : split_whitespace(line)) {
    if (protected_tokens.contains(token)) {
      out.push_back(token);
      continue;
    }
    std::size_t i = 0;
    while (i < token.size()) {
      if (is_word_byte(static_cast<unsigned char>(token[i]))) {
        std::size_t j = i;
        while (j < token.size() && is_word_byte(static_cast<unsigned char>(token[j]))) ++j;
        out.push_back(token.substr(i, j - i));
        i = j;
      } else {
        out.push_back(token.substr(i, 1));
        ++i;
      }
    }
  }
  return out;
}

std::vector<std::string> initial_symbols(std::string_view token) {
  std::vector<std::string> symbols;
  std::size_t i = 0;
  while (i < token.size()) {
    const std::size_t n = std::min(utf8_length(static_cast<unsigned char>(token[i])), token.size() - i);
    symbols.emplace_back(token.substr(i, n));
    i += n;
  }
  if (!symbols.empty()) symbols.back() += kEndOfWord;
  return symbols;
}

BpeModel bpe_learn(const std::map<std::string, std::uint64_t>& token_frequencies, std::size_t num_merges) {
  struct Word {
    std::vector<std::string> symbols;
    std::uint64_t freq;
  };
  std::vector<Word> words;
  for (const auto& [token, freq] : token_frequencies) {
    if (!token.empty() && freq > 0) words.push_back({initial_symbols(token), freq});
  }
  std::map<SymbolPair, std::uint64_t> counts;
  std::map<SymbolPair, std::set<std::size_t>> where;
  auto add_word = [&](std::size_t w, bool add) {
    const auto& s = words[w].symbols;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      SymbolPair p{s[i], s[i + 1]};
      if (add) {
        counts[p] += words[w].freq;
        where[p].insert(w);
      } else {
        auto it = counts.find(p);
        it->second -= words[w].freq;
        if (it->second == 0) counts.erase(it);
      }
    }
  };
  for (std::size_t w = 0; w < words.size(); ++w) add_word(w, true);

  BpeModel model;
  while (model.merges.size() < num_merges) {
    auto best = counts.end();
    for (auto it = counts.begin(); it != counts.end(); ++it) {
      if (best == counts.end() || it->second > best->second) best = it;
    }
    if (best == counts.end() || best->second < 2) break;
    const SymbolPair pair = best->first;
    model.merges.push_back(pair);
    const std::set<std::size_t> affected = std::move(where[pair]);
    where.erase(pair);
    for (std::size_t w : affected) {
      auto& s = words[w].symbols;
      bool present = false;
      for (std::size_t i = 0; i + 1 < s.size() && !present; ++i) present = s[i] == pair.first && s[i + 1] == pair.second;
      if (!present) continue;
      add_word(w, false);
      std::vector<std::string> merged;
      for (std::size_t i = 0; i < s.size();) {
        if (i + 1 < s.size() && s[i] == pair.first && s[i + 1] == pair.second) {
          merged.push_back(s[i] + s[i + 1]);
          i += 2;
        } else {
          merged.push_back(s[i]);
          ++i;
        }
      }
      s = std::move(merged);
      add_word(w, true);
    }
  }
  return model;
}

std::map<std::string, std::uint64_t> count_tokens_for_bpe(std::span<const std::string> lines,
                                                          const std::set<std::string, std::less<>>& protected_tokens) {
  std::map<std::string, std::uint64_t> freq;
  for (const auto& line : lines) {
    for (auto& t : split_whitespace(line)) {
      if (!protected_tokens.contains(t)) ++freq[t];
    }
  }
  return freq;
}

BpeEncoder::BpeEncoder(BpeModel model, std::set<std::string, std::less<>> protected_tokens)
    : model_(std::move(model)), protected_(std::move(protected_tokens)) {
  for (std::size_t i = 0; i < model_.merges.size(); ++i) ranks_.emplace(model_.merges[i], i);
}

std::vector<std::string> BpeEncoder::encode(const std::string& token) const {
  if (protected_.contains(token)) return {token};
  if (auto it = cache_.find(token); it != cache_.end()) return it->second;
  std::vector<std::string> s = initial_symbols(token);
  while (s.size() > 1) {
    std::size_t best_rank = model_.merges.size();
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      auto it = ranks_.find(SymbolPair{s[i], s[i + 1]});
      if (it != ranks_.end() && it->second < best_rank) best_rank = it->second;
    }
    if (best_rank == model_.merges.size()) break;
    const SymbolPair& pair = model_.merges[best_rank];
    std::vector<std::string> merged;
    for (std::size_t i = 0; i < s.size();) {
      if (i + 1 < s.size() && s[i] == pair.first && s[i + 1] == pair.second) {
        merged.push_back(s[i] + s[i + 1]);
        i += 2;
      } else {
        merged.push_back(s[i]);
        ++i;
      }
    }
    s = std::move(merged);
  }
  if (!s.empty()) s.back().resize(s.back().size() - kEndOfWord.size());
  for (std::size_t i = 0; i + 1 < s.size(); ++i) s[i] += model_.continuation_marker;
  cache_.emplace(token, s);
  return s;
}

std::vector<std::string> BpeEncoder::apply(std::span<const std::string> tokens) const {
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    for (auto& piece : encode(t)) out.push_back(std::move(piece));
  }
  return out;
}

std::optional<std::vector<std::string>> BpeEncoder::apply_checked(std::span<const std::string> tokens) const {
  for (const auto& t : tokens) {
    if (!protected_.contains(t) && ends_with(t, model_.continuation_marker)) {
      // Only a problem if the final subtoken keeps the marker suffix.
      if (ends_with(encode(t).back(), model_.continuation_marker)) return std::nullopt;
    }
  }
  return apply(tokens);
}

std::vector<std::string> bpe_apply(const BpeModel& model, std::span<const std::string> tokens) {
  return BpeEncoder(model).apply(tokens);
}

std::vector<std::string> bpe_revert(std::span<const std::string> subtokens, std::string_view continuation_marker) {
  std::vector<std::string> out;
  std::string pending;
  bool open = false;
  for (const auto& s : subtokens) {
    if (ends_with(s, continuation_marker)) {
      pending.append(s, 0, s.size() - continuation_marker.size());
      open = true;
    } else {
      out.push_back(pending + s);
      pending.clear();
      open = false;
    }
  }
  if (open) throw MalformedSequence("sequence ends with a continued subtoken '" + pending + "'");
  return out;
}

std::string format_model(const BpeModel& model) {
  std::string out = "#version: " + model.version + "\n";
  for (const auto& [l, r] : model.merges) out += l + " " + r + "\n";
  return out;
}

BpeModel parse_model(std::string_view text) {
  BpeModel model;
  std::size_t start = 0;
  int line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line_no == 1) {
      if (!line.starts_with("#version: ")) throw ModelFormatError("BPE model lacks a '#version:' header");
      model.version = std::string(line.substr(10));
      continue;
    }
    const std::size_t space = line.find(' ');
    if (space == std::string_view::npos || space == 0 || space + 1 == line.size() ||
        line.find(' ', space + 1) != std::string_view::npos) {
      throw ModelFormatError("BPE model line " + std::to_string(line_no) + " is not 'left right'");
    }
    model.merges.emplace_back(std::string(line.substr(0, space)), std::string(line.substr(space + 1)));
  }
  if (line_no == 0) throw ModelFormatError("empty BPE model");
  return model;
}

void save_model(const BpeModel& model, const std::filesystem::path& path) {
  AtomicOutputs out;
  out.open(path) << format_model(model);
  out.commit();
}

BpeModel load_model(const std::filesystem::path& path) { return parse_model(read_file(path)); }

}  // namespace pycorpus
