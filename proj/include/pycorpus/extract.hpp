#pragma once

// Top-level function extraction from Python source trees.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pycorpus/pyparse.hpp"

namespace pycorpus {

struct Provenance {
  std::string owner;
  std::string repo;
  std::string rel_path;  // '/'-separated, relative to the repository root
};

struct FunctionRecord {
  std::string owner;
  std::string repo;
  std::string rel_path;
  int line = 0;  // line of the `def` keyword
  std::vector<CanonicalLine> decl_lines;  // decorators then the def header
  std::optional<std::string> docstring_raw;
  std::vector<CanonicalLine> body_lines;  // indent 1 is the function body
  Stmt function;  // the definition with its docstring removed
  bool print_function = false;
};

/// One record per module-level function definition, in file order.
[[nodiscard]] std::vector<FunctionRecord> extract_functions(const ModuleTree& tree,
                                                            const Provenance& provenance);

/// Maps a file path below the scan root to owner/repo/rel_path.
struct Layout {
  // Number of leading directories naming the repository: 2 gives
  // root/<owner>/<repo>/..., 0 uses `owner` and `repo` below for every file.
  int repo_levels = 2;
  std::string owner;
  std::string repo;
};

struct FileIssue {
  std::string path;
  int line = 0;
  std::string reason;
};

struct ScanReport {
  std::size_t files_seen = 0;
  std::size_t files_parsed = 0;
  std::size_t parse_failures = 0;
  std::size_t unreadable_files = 0;
  std::size_t outside_layout = 0;
  std::size_t functions_total = 0;
  std::size_t parallel = 0;
  std::size_t code_only = 0;
  std::vector<FileIssue> issues;
};

struct ScanResult {
  std::vector<FunctionRecord> parallel;
  std::vector<FunctionRecord> code_only;
  ScanReport report;
};

class ScanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Visits every `.py` file below `root` (symlinks are not followed), extracts
/// top-level functions and routes each to `parallel` when its cleaned
/// docstring is non-empty. Output is ordered by (owner, repo, rel_path, line)
/// whatever the worker count. Throws ScanError when `root` is unusable.
[[nodiscard]] ScanResult scan_tree(const std::filesystem::path& root, const Layout& layout = {},
                                   unsigned workers = 0);

}  // namespace pycorpus
