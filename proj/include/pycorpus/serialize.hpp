#pragma once

// Line-aligned corpus files with DCNL/DCSP escaping.

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pycorpus/extract.hpp"

namespace pycorpus {

inline constexpr std::string_view kNewlineMarker = "DCNL";
inline constexpr std::string_view kIndentMarker = "DCSP";

class MalformedLine : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[nodiscard]] std::string escape_body(std::span<const CanonicalLine> lines);

/// Inverse of escape_body. Throws MalformedLine on a DCSP after text or an
/// empty line segment.
[[nodiscard]] std::vector<CanonicalLine> unescape_body(std::string_view line);

/// Single-line, single-quoted form of a docstring, or nothing when no line
/// with an alphanumeric character survives.
[[nodiscard]] std::optional<std::string> clean_docstring(std::string_view raw);

/// True when a whitespace-separated token of `text` is DCNL or DCSP.
[[nodiscard]] bool contains_marker(std::string_view text);

struct CorpusTriple {
  std::string decl_line;
  std::optional<std::string> docstring_line;
  std::string body_line;
  std::string metadata_line;

  friend bool operator==(const CorpusTriple&, const CorpusTriple&) = default;
};

struct CorpusFiles {
  std::filesystem::path decl_path;
  std::filesystem::path body_path;
  std::optional<std::filesystem::path> docstring_path;
  std::filesystem::path metadata_path;

  /// `<stem>.decl`, `<stem>.bodies`, `<stem>.docstring`, `<stem>.metadata`.
  [[nodiscard]] static CorpusFiles at(const std::filesystem::path& stem, bool with_docstrings);
  /// Like at(), but with a docstring file only if one exists on disk.
  [[nodiscard]] static CorpusFiles detect(const std::filesystem::path& stem);
};

[[nodiscard]] std::string metadata_line(const FunctionRecord& record, std::string_view prefix);

/// Serialized form of a record. Empty when the code, docstring or path would
/// make the escaping ambiguous.
[[nodiscard]] std::optional<CorpusTriple> to_triple(const FunctionRecord& record,
                                                    std::string_view prefix,
                                                    bool with_docstring);

struct WriteReport {
  std::size_t written = 0;
  std::size_t dropped_marker_collisions = 0;
  std::vector<std::string> dropped;  // metadata of dropped records
};

WriteReport write_corpus(std::span<const FunctionRecord> records, const CorpusFiles& out,
                         std::string_view prefix = "github");

/// Writes triples as-is; the docstring file is written iff out has one.
void write_triples(std::span<const CorpusTriple> triples, const CorpusFiles& out);

/// Reads and validates an aligned corpus. Throws CorpusError on a line-count
/// mismatch (naming both files) and MalformedLine on a bad body line.
[[nodiscard]] std::vector<CorpusTriple> read_corpus(const CorpusFiles& in);

/// Python source of the function described by a decl and a body line.
[[nodiscard]] std::string reassemble_source(std::string_view decl_line, std::string_view body_line);

/// Reparses the reassembled function (retrying with print as a function) and
/// checks that its canonical form serializes back to the same two lines.
/// Returns an empty string on success, otherwise the reason.
[[nodiscard]] std::string check_reversible(std::string_view decl_line, std::string_view body_line);

}  // namespace pycorpus
