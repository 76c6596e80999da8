#include "pycorpus/serialize.hpp"

#include <cctype>

#include "pycorpus/literals.hpp"
#include "pycorpus/textio.hpp"

namespace pycorpus {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Letters and digits. Outside ASCII, symbol and punctuation blocks are
// excluded so rulers drawn with box or dash characters are dropped too.
bool is_alnum_code_point(char32_t c) {
  if (c < 0x80) return std::isalnum(static_cast<int>(c)) != 0;
  if (c < 0xC0) return c == 0xAA || c == 0xB2 || c == 0xB3 || c == 0xB5 || c == 0xB9 || c == 0xBA ||
                       (c >= 0xBC && c <= 0xBE);
  if (c == 0xD7 || c == 0xF7) return false;
  if (c >= 0x2000 && c <= 0x2BFF) return false;
  if (c >= 0x3000 && c <= 0x303F) return false;
  if (c >= 0xFE30 && c <= 0xFE4F) return false;
  if (c >= 0xFF00 && c <= 0xFF0F) return false;
  return c != 0xFFFD;
}

bool has_alnum(std::string_view line) {
  for (char32_t c : literals::decode_extended_utf8(line)) {
    if (is_alnum_code_point(c)) return true;
  }
  return false;
}

// Positions of DCNL tokens delimited by spaces or the line ends.
std::vector<std::size_t> newline_markers(std::string_view line) {
  std::vector<std::size_t> found;
  std::size_t pos = 0;
  while ((pos = line.find(kNewlineMarker, pos)) != std::string_view::npos) {
    const std::size_t end = pos + kNewlineMarker.size();
    if ((pos == 0 || line[pos - 1] == ' ') && (end == line.size() || line[end] == ' '))
      found.push_back(pos);
    pos = end;
  }
  return found;
}

CanonicalLine parse_segment(std::string_view segment) {
  segment = trim(segment);
  if (segment.empty()) throw MalformedLine("empty line segment between DCNL markers");
  CanonicalLine out;
  while (segment.starts_with(kIndentMarker) &&
         (segment.size() == kIndentMarker.size() || segment[kIndentMarker.size()] == ' ')) {
    ++out.indent;
    segment = trim(segment.substr(kIndentMarker.size()));
  }
  if (segment.empty()) throw MalformedLine("line segment holds only DCSP markers");
  if (contains_marker(segment))
    throw MalformedLine("DCSP marker after code in segment '" + std::string(segment) + "'");
  out.text = std::string(segment);
  return out;
}

}  // namespace

std::string escape_body(std::span<const CanonicalLine> lines) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) {
      out += ' ';
      out += kNewlineMarker;
      out += ' ';
    }
    for (int k = 0; k < lines[i].indent; ++k) {
      out += kIndentMarker;
      out += ' ';
    }
    out += lines[i].text;
  }
  return out;
}

std::vector<CanonicalLine> unescape_body(std::string_view line) {
  std::vector<CanonicalLine> out;
  std::size_t start = 0;
  for (std::size_t pos : newline_markers(line)) {
    out.push_back(parse_segment(line.substr(start, pos - start)));
    start = pos + kNewlineMarker.size();
  }
  out.push_back(parse_segment(line.substr(start)));
  return out;
}

bool contains_marker(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    const std::string_view token = text.substr(i, j - i);
    if (token == kNewlineMarker || token == kIndentMarker) return true;
    i = j;
  }
  return false;
}

std::optional<std::string> clean_docstring(std::string_view raw) {
  std::string joined;
  std::size_t start = 0;
  while (start <= raw.size()) {
    std::size_t end = raw.find('\n', start);
    if (end == std::string_view::npos) end = raw.size();
    const std::string_view line = trim(raw.substr(start, end - start));
    start = end + 1;
    if (!has_alnum(line)) continue;
    if (!joined.empty()) {
      joined += ' ';
      joined += kNewlineMarker;
      joined += ' ';
    }
    bool in_space = false;
    for (char c : line) {
      if (is_space(c)) {
        in_space = true;
        continue;
      }
      if (in_space) joined += ' ';
      in_space = false;
      joined += c;
    }
  }
  if (joined.empty()) return std::nullopt;
  std::string quoted = "'";
  for (char c : joined) {
    if (c == '\'' || c == '\\') quoted += '\\';
    quoted += c;
  }
  quoted += '\'';
  return quoted;
}

CorpusFiles CorpusFiles::at(const std::filesystem::path& stem, bool with_docstrings) {
  auto with_suffix = [&](const char* suffix) {
    std::filesystem::path p = stem;
    p += suffix;
    return p;
  };
  CorpusFiles files;
  files.decl_path = with_suffix(".decl");
  files.body_path = with_suffix(".bodies");
  if (with_docstrings) files.docstring_path = with_suffix(".docstring");
  files.metadata_path = with_suffix(".metadata");
  return files;
}

CorpusFiles CorpusFiles::detect(const std::filesystem::path& stem) {
  std::filesystem::path doc = stem;
  doc += ".docstring";
  return at(stem, std::filesystem::exists(doc));
}

std::string metadata_line(const FunctionRecord& record, std::string_view prefix) {
  std::string out;
  if (!prefix.empty()) {
    out += prefix;
    out += '/';
  }
  out += record.owner + "/" + record.repo + "/" + record.rel_path + " " + std::to_string(record.line);
  return out;
}

std::optional<CorpusTriple> to_triple(const FunctionRecord& record, std::string_view prefix,
                                      bool with_docstring) {
  for (const auto& lines : {&record.decl_lines, &record.body_lines}) {
    for (const auto& l : *lines) {
      if (contains_marker(l.text)) return std::nullopt;
    }
  }
  CorpusTriple t;
  t.metadata_line = metadata_line(record, prefix);
  if (t.metadata_line.find_first_of("\n\r") != std::string::npos) return std::nullopt;
  if (with_docstring) {
    if (!record.docstring_raw) throw std::invalid_argument("record without docstring: " + t.metadata_line);
    if (contains_marker(*record.docstring_raw)) return std::nullopt;
    t.docstring_line = clean_docstring(*record.docstring_raw);
    if (!t.docstring_line) throw std::invalid_argument("record without docstring: " + t.metadata_line);
  }
  t.decl_line = escape_body(record.decl_lines);
  t.body_line = escape_body(record.body_lines);
  return t;
}

WriteReport write_corpus(std::span<const FunctionRecord> records, const CorpusFiles& out,
                         std::string_view prefix) {
  WriteReport report;
  std::vector<CorpusTriple> triples;
  triples.reserve(records.size());
  for (const auto& r : records) {
    auto t = to_triple(r, prefix, out.docstring_path.has_value());
    if (!t) {
      ++report.dropped_marker_collisions;
      report.dropped.push_back(metadata_line(r, prefix));
      continue;
    }
    triples.push_back(std::move(*t));
  }
  write_triples(triples, out);
  report.written = triples.size();
  return report;
}

void write_triples(std::span<const CorpusTriple> triples, const CorpusFiles& out) {
  AtomicOutputs files;
  std::ofstream& decl = files.open(out.decl_path);
  std::ofstream& body = files.open(out.body_path);
  std::ofstream* doc = out.docstring_path ? &files.open(*out.docstring_path) : nullptr;
  std::ofstream& meta = files.open(out.metadata_path);
  for (const auto& t : triples) {
    decl << t.decl_line << '\n';
    body << t.body_line << '\n';
    if (doc) {
      if (!t.docstring_line) throw CorpusError("missing docstring for " + t.metadata_line);
      *doc << *t.docstring_line << '\n';
    }
    meta << t.metadata_line << '\n';
  }
  files.commit();
}

std::vector<CorpusTriple> read_corpus(const CorpusFiles& in) {
  struct Column {
    const std::filesystem::path* path;
    std::vector<std::string> lines;
  };
  std::vector<Column> columns;
  columns.push_back({&in.decl_path, read_lines(in.decl_path)});
  columns.push_back({&in.body_path, read_lines(in.body_path)});
  if (in.docstring_path) columns.push_back({&*in.docstring_path, read_lines(*in.docstring_path)});
  columns.push_back({&in.metadata_path, read_lines(in.metadata_path)});
  for (const auto& c : columns) {
    if (c.lines.size() != columns.front().lines.size()) {
      throw CorpusError("corpus misaligned: " + columns.front().path->string() + " has " +
                        std::to_string(columns.front().lines.size()) + " lines but " + c.path->string() +
                        " has " + std::to_string(c.lines.size()));
    }
  }
  const std::size_t n = columns.front().lines.size();
  std::vector<CorpusTriple> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = 0;
    CorpusTriple& t = out[i];
    t.decl_line = std::move(columns[k++].lines[i]);
    t.body_line = std::move(columns[k++].lines[i]);
    if (in.docstring_path) t.docstring_line = std::move(columns[k++].lines[i]);
    t.metadata_line = std::move(columns[k++].lines[i]);
    auto where = [&](const std::filesystem::path& p) { return p.string() + ":" + std::to_string(i + 1) + ": "; };
    try {
      (void)unescape_body(t.decl_line);
    } catch (const MalformedLine& e) {
      throw MalformedLine(where(in.decl_path) + e.what());
    }
    try {
      (void)unescape_body(t.body_line);
    } catch (const MalformedLine& e) {
      throw MalformedLine(where(in.body_path) + e.what());
    }
    if (t.docstring_line) {
      const std::string& d = *t.docstring_line;
      if (d.size() < 2 || d.front() != '\'' || d.back() != '\'')
        throw MalformedLine(where(*in.docstring_path) + "docstring is not a quoted string");
    }
    if (t.metadata_line.empty()) throw MalformedLine(where(in.metadata_path) + "empty metadata line");
  }
  return out;
}

}  // namespace pycorpus

namespace pycorpus {

std::string reassemble_source(std::string_view decl_line, std::string_view body_line) {
  std::vector<CanonicalLine> lines = unescape_body(decl_line);
  for (auto& l : unescape_body(body_line)) lines.push_back(std::move(l));
  return render(lines);
}

std::string check_reversible(std::string_view decl_line, std::string_view body_line) {
  std::string source;
  try {
    source = reassemble_source(decl_line, body_line);
  } catch (const MalformedLine& e) {
    return e.what();
  }
  std::string reason;
  for (bool print_function : {false, true}) {
    ModuleTree tree;
    try {
      tree = parse_module(source, "<reassembled>", ParseOptions{print_function});
    } catch (const ParseFailure& e) {
      reason = e.what();
      continue;
    }
    if (tree.body.size() != 1 || tree.body.front().kind != StmtKind::FunctionDef) {
      return "reassembled source is not a single function definition";
    }
    const Stmt& fn = tree.body.front();
    if (escape_body(unparse_header(fn)) != decl_line) {
      reason = "declaration does not survive the round trip";
      continue;
    }
    if (escape_body(unparse_block(fn.body, 1)) != body_line) {
      reason = "body does not survive the round trip";
      continue;
    }
    return {};
  }
  return reason;
}

}  // namespace pycorpus
