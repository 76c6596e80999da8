#include "pycorpus/extract.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <tuple>

#include "pycorpus/literals.hpp"
#include "pycorpus/serialize.hpp"
#include "pycorpus/textio.hpp"

namespace pycorpus {

std::vector<FunctionRecord> extract_functions(const ModuleTree& tree, const Provenance& provenance) {
  std::vector<FunctionRecord> records;
  for (const Stmt& stmt : tree.body) {
    if (stmt.kind != StmtKind::FunctionDef) continue;
    FunctionRecord r;
    r.owner = provenance.owner;
    r.repo = provenance.repo;
    r.rel_path = provenance.rel_path;
    r.line = stmt.line;
    r.print_function = tree.print_function;
    r.function = stmt;
    if (const Expr* doc = docstring_of(stmt)) {
      r.docstring_raw = literals::to_display_text(*doc);
      r.function.body.erase(r.function.body.begin());
    }
    if (r.function.body.empty()) {
      Stmt pass;
      pass.kind = StmtKind::Pass;
      pass.line = stmt.line;
      pass.indent_level = stmt.indent_level + 1;
      r.function.body.push_back(pass);
    }
    r.decl_lines = unparse_header(r.function);
    r.body_lines = unparse_block(r.function.body, 1);
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

struct FileJob {
  std::filesystem::path path;
  Provenance provenance;
};

struct FileOutcome {
  std::vector<FunctionRecord> records;
  bool parsed = false;
  bool unreadable = false;
  std::optional<FileIssue> issue;
};

FileOutcome process(const FileJob& job) {
  FileOutcome out;
  std::string source;
  try {
    source = read_file(job.path);
  } catch (const IoError& e) {
    out.unreadable = true;
    out.issue = FileIssue{job.path.generic_string(), 0, e.what()};
    return out;
  }
  try {
    ModuleTree tree = parse_module(source, job.path.generic_string());
    out.records = extract_functions(tree, job.provenance);
    out.parsed = true;
  } catch (const ParseFailure& e) {
    out.issue = FileIssue{e.path(), e.line(), e.reason()};
  }
  return out;
}

auto sort_key(const FunctionRecord& r) { return std::tie(r.owner, r.repo, r.rel_path, r.line); }

}  // namespace

ScanResult scan_tree(const std::filesystem::path& root, const Layout& layout, unsigned workers) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw ScanError("scan root is not a readable directory: " + root.string());

  ScanResult result;
  std::vector<FileJob> jobs;
  fs::recursive_directory_iterator it(root, fs::directory_options::none, ec);
  if (ec) throw ScanError("cannot read " + root.string() + ": " + ec.message());
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) throw ScanError("error walking " + root.string() + ": " + ec.message());
    const fs::directory_entry& entry = *it;
    if (entry.is_symlink(ec)) {
      if (entry.is_directory(ec)) it.disable_recursion_pending();
      continue;
    }
    if (!entry.is_regular_file(ec) || entry.path().extension() != ".py") continue;
    ++result.report.files_seen;
    const fs::path rel = entry.path().lexically_relative(root);
    std::vector<std::string> parts;
    for (const auto& p : rel) parts.push_back(p.string());
    FileJob job{entry.path(), {}};
    const auto levels = static_cast<std::size_t>(std::max(layout.repo_levels, 0));
    if (parts.size() <= levels) {
      ++result.report.outside_layout;
      result.report.issues.push_back({entry.path().generic_string(), 0, "file outside owner/repo layout"});
      continue;
    }
    if (levels == 0) {
      job.provenance.owner = layout.owner;
      job.provenance.repo = layout.repo;
    } else if (levels == 1) {
      job.provenance.owner = layout.owner.empty() ? parts[0] : layout.owner;
      job.provenance.repo = parts[0];
    } else {
      job.provenance.owner = parts[levels - 2];
      job.provenance.repo = parts[levels - 1];
    }
    std::string rel_path;
    for (std::size_t i = levels; i < parts.size(); ++i) {
      if (!rel_path.empty()) rel_path += '/';
      rel_path += parts[i];
    }
    job.provenance.rel_path = rel_path;
    jobs.push_back(std::move(job));
  }
  std::sort(jobs.begin(), jobs.end(), [](const FileJob& a, const FileJob& b) {
    return std::tie(a.provenance.owner, a.provenance.repo, a.provenance.rel_path) <
           std::tie(b.provenance.owner, b.provenance.repo, b.provenance.rel_path);
  });

  std::vector<FileOutcome> outcomes(jobs.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, std::max<std::size_t>(jobs.size(), 1));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) outcomes[i] = process(jobs[i]);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::vector<FunctionRecord> all;
  for (auto& o : outcomes) {
    if (o.parsed) ++result.report.files_parsed;
    else if (o.unreadable) ++result.report.unreadable_files;
    else ++result.report.parse_failures;
    if (o.issue) result.report.issues.push_back(std::move(*o.issue));
    for (auto& r : o.records) all.push_back(std::move(r));
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const FunctionRecord& a, const FunctionRecord& b) { return sort_key(a) < sort_key(b); });
  for (auto& r : all) {
    const bool documented = r.docstring_raw && clean_docstring(*r.docstring_raw).has_value();
    (documented ? result.parallel : result.code_only).push_back(std::move(r));
  }
  result.report.functions_total = result.parallel.size() + result.code_only.size();
  result.report.parallel = result.parallel.size();
  result.report.code_only = result.code_only.size();
  return result;
}

}  // namespace pycorpus
