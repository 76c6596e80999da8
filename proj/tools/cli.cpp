#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>

#include "pycorpus/bleu.hpp"
#include "pycorpus/datasetops.hpp"
#include "pycorpus/extract.hpp"
#include "pycorpus/serialize.hpp"
#include "pycorpus/subtok.hpp"
#include "pycorpus/textio.hpp"

namespace pycorpus::cli {
namespace {

namespace fs = std::filesystem;

struct Logger {
  std::ostream& err;
  int verbosity = 1;
  void info(const std::string& msg) const {
    if (verbosity >= 1) err << msg << '\n';
  }
  void debug(const std::string& msg) const {
    if (verbosity >= 2) err << msg << '\n';
  }
};

class CommandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_corpus(const fs::path& stem, bool docstrings) {
  const CorpusFiles f = CorpusFiles::at(stem, docstrings);
  for (const fs::path& p : {f.decl_path, f.body_path, f.metadata_path}) {
    if (!fs::is_regular_file(p)) throw CommandError("missing corpus file " + p.string());
  }
  if (f.docstring_path && !fs::is_regular_file(*f.docstring_path))
    throw CommandError("missing corpus file " + f.docstring_path->string());
}

std::set<std::string, std::less<>> to_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

struct Options {
  // extract
  std::string root, out_dir, prefix = "github", owner, repo;
  int repo_levels = 2;
  unsigned workers = 0;
  // shared corpus stems
  std::string in, out;
  // split
  std::size_t valid_size = 2000, test_size = 2000;
  std::uint64_t seed = 1;
  // stats
  std::string stats_format = "both";
  // bpe
  std::vector<std::string> bpe_inputs;
  std::string model;
  std::size_t merges = 89500;
  bool punct = true;
  std::vector<std::string> protected_tokens{"DCNL", "DCSP"};
  std::string marker = "@@";
  // bleu
  std::string candidates, references;
  // assemble-bt
  std::string parallel, code_only, synthetic;
  // roundtrip-check
  std::vector<std::string> corpora;
};

int cmd_extract(const Options& o, std::ostream& out, const Logger& log) {
  Layout layout;
  layout.repo_levels = o.repo_levels;
  layout.owner = o.owner;
  layout.repo = o.repo;
  if (layout.repo_levels == 0 && (layout.owner.empty() || layout.repo.empty()))
    throw CommandError("--repo-levels 0 needs --owner and --repo");
  ScanResult scan = scan_tree(o.root, layout, o.workers);
  for (const auto& issue : scan.report.issues) {
    log.info("skipped " + issue.path + (issue.line ? ":" + std::to_string(issue.line) : "") + ": " + issue.reason);
  }
  const fs::path dir = o.out_dir;
  fs::create_directories(dir);
  const WriteReport par = write_corpus(scan.parallel, CorpusFiles::at(dir / "parallel", true), o.prefix);
  const WriteReport code = write_corpus(scan.code_only, CorpusFiles::at(dir / "code_only", false), o.prefix);
  for (const auto* w : {&par, &code}) {
    for (const auto& m : w->dropped) log.info("dropped (DCNL/DCSP already in source): " + m);
  }
  const ScanReport& r = scan.report;
  out << "files_seen=" << r.files_seen << "\n"
      << "files_parsed=" << r.files_parsed << "\n"
      << "parse_failures=" << r.parse_failures << "\n"
      << "unreadable_files=" << r.unreadable_files << "\n"
      << "outside_layout=" << r.outside_layout << "\n"
      << "functions_total=" << r.functions_total << "\n"
      << "parallel=" << par.written << "\n"
      << "code_only=" << code.written << "\n"
      << "dropped_marker_collisions=" << par.dropped_marker_collisions + code.dropped_marker_collisions << "\n";
  return 0;
}

int cmd_dedup(const Options& o, std::ostream& out, const Logger&) {
  const CorpusFiles in = CorpusFiles::detect(o.in);
  const auto triples = read_corpus(in);
  const auto kept = dedup(triples);
  write_triples(kept, CorpusFiles::at(o.out, in.docstring_path.has_value()));
  out << "input=" << triples.size() << "\nkept=" << kept.size() << "\nremoved=" << triples.size() - kept.size()
      << "\n";
  return 0;
}

int cmd_split(const Options& o, std::ostream& out, const Logger&) {
  const CorpusFiles in = CorpusFiles::detect(o.in);
  const auto triples = read_corpus(in);
  const SplitResult s = split(triples, SplitSpec{o.valid_size, o.test_size, o.seed});
  const fs::path dir = o.out;
  fs::create_directories(dir);
  const bool doc = in.docstring_path.has_value();
  write_triples(s.train, CorpusFiles::at(dir / "train", doc));
  write_triples(s.valid, CorpusFiles::at(dir / "valid", doc));
  write_triples(s.test, CorpusFiles::at(dir / "test", doc));
  out << "seed=" << o.seed << "\nvalid_size=" << o.valid_size << "\ntest_size=" << o.test_size
      << "\ntrain=" << s.train.size() << "\nvalid=" << s.valid.size() << "\ntest=" << s.test.size() << "\n";
  return 0;
}

int cmd_stats(const Options& o, std::ostream& out, const Logger&) {
  const StatsReport report = compute_stats(CorpusFiles::detect(o.in));
  if (o.stats_format != "kv") out << format_stats_table(report);
  if (o.stats_format == "both") out << "\n";
  if (o.stats_format != "table") out << format_stats_key_values(report);
  return consistent(report) ? 0 : 1;
}

std::vector<std::string> tokens_of(const std::string& line, bool punct, const std::set<std::string, std::less<>>& prot) {
  return punct ? punct_split(line, prot) : split_whitespace(line);
}

int cmd_learn_bpe(const Options& o, std::ostream& out, const Logger& log) {
  const auto prot = to_set(o.protected_tokens);
  std::map<std::string, std::uint64_t> freq;
  for (const auto& path : o.bpe_inputs) {
    for (const auto& line : read_lines(path)) {
      for (auto& t : tokens_of(line, o.punct, prot)) {
        if (!prot.contains(t)) ++freq[t];
      }
    }
  }
  log.debug("distinct tokens: " + std::to_string(freq.size()));
  const BpeModel model = bpe_learn(freq, o.merges);
  save_model(model, o.model);
  out << "distinct_tokens=" << freq.size() << "\nmerges_requested=" << o.merges
      << "\nmerges_learned=" << model.merges.size() << "\n";
  return 0;
}

int cmd_apply_bpe(const Options& o, std::ostream& out, const Logger& log) {
  const auto prot = to_set(o.protected_tokens);
  BpeModel model = load_model(o.model);
  model.continuation_marker = o.marker;
  const BpeEncoder encoder(std::move(model), prot);
  std::vector<std::string> lines;
  std::vector<std::string> flagged;
  std::size_t n = 0;
  for (const auto& line : read_lines(o.in)) {
    ++n;
    auto result = encoder.apply_checked(tokens_of(line, o.punct, prot));
    if (!result) {
      flagged.push_back(std::to_string(n));
      log.info("line " + std::to_string(n) + ": token ends with the continuation marker; emitted empty");
      lines.emplace_back();
      continue;
    }
    lines.push_back(join_tokens(*result));
  }
  AtomicOutputs files;
  std::ofstream& f = files.open(o.out);
  for (const auto& l : lines) f << l << '\n';
  std::ofstream& g = files.open(o.out + ".flagged");
  for (const auto& l : flagged) g << l << '\n';
  files.commit();
  out << "lines=" << lines.size() << "\nflagged=" << flagged.size() << "\n";
  return 0;
}

int cmd_revert_bpe(const Options& o, std::ostream& out, const Logger&) {
  std::vector<std::string> lines;
  std::size_t n = 0;
  for (const auto& line : read_lines(o.in)) {
    ++n;
    try {
      lines.push_back(join_tokens(bpe_revert(split_whitespace(line), o.marker)));
    } catch (const MalformedSequence& e) {
      throw CommandError(o.in + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  write_lines_atomic(o.out, lines);
  out << "lines=" << lines.size() << "\n";
  return 0;
}

int cmd_bleu(const Options& o, std::ostream& out, const Logger&) {
  const BleuReport r = corpus_bleu(read_lines(o.candidates), read_lines(o.references));
  out << format_bleu_line(r) << "\n" << format_bleu_key_values(r);
  return 0;
}

int cmd_assemble_bt(const Options& o, std::ostream& out, const Logger&) {
  require_corpus(o.parallel, true);
  require_corpus(o.code_only, false);
  const fs::path stem = o.out;
  fs::path provenance = stem;
  provenance += ".provenance";
  const AssembleReport r =
      assemble_backtranslation(CorpusFiles::at(o.parallel, true), CorpusFiles::at(o.code_only, false), o.synthetic,
                               CorpusFiles::at(stem, true), provenance);
  out << "parallel=" << r.parallel << "\nsynthetic=" << r.synthetic << "\ncombined=" << r.combined << "\n";
  return 0;
}

int cmd_roundtrip_check(const Options& o, std::ostream& out, const Logger& log) {
  std::size_t checked = 0, failed = 0;
  for (const auto& stem : o.corpora) {
    const auto triples = read_corpus(CorpusFiles::detect(stem));
    for (const auto& t : triples) {
      ++checked;
      const std::string reason = check_reversible(t.decl_line, t.body_line);
      if (reason.empty()) continue;
      ++failed;
      out << "FAIL " << t.metadata_line << "\n";
      log.info(t.metadata_line + ": " + reason);
    }
  }
  out << "checked=" << checked << "\nfailed=" << failed << "\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Python function/docstring corpus tools"};
  app.set_config("--config", "", "TOML/INI config file; command-line flags override it");
  app.require_subcommand(1);
  Options o;
  int verbose = 0;
  bool quiet = false;
  app.add_flag("-v,--verbose", verbose, "More log output (repeatable)");
  app.add_flag("-q,--quiet", quiet, "Only errors on stderr");

  using Handler = std::function<int(const Options&, std::ostream&, const Logger&)>;
  Handler handler;
  auto sub = [&](const char* name, const char* help, Handler h) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&handler, h] { handler = h; });
    return s;
  };
  auto add_corpus_in = [&](CLI::App* s) {
    return s->add_option("--in", o.in, "Corpus stem (files <stem>.decl, .bodies, [.docstring], .metadata)")->required();
  };
  auto add_bpe_flags = [&](CLI::App* s) {
    s->add_flag("--punct-split,!--no-punct-split", o.punct, "Split punctuation before BPE")->capture_default_str();
    s->add_option("--protected", o.protected_tokens, "Tokens never split")->capture_default_str();
  };

  CLI::App* extract = sub("extract", "Extract functions from a tree of repositories", cmd_extract);
  extract->add_option("--root", o.root, "Directory laid out as <owner>/<repo>/...")->required()->check(CLI::ExistingDirectory);
  extract->add_option("--out", o.out_dir, "Output directory")->required();
  extract->add_option("--prefix", o.prefix, "Metadata prefix")->capture_default_str();
  extract->add_option("--repo-levels", o.repo_levels, "Directory levels naming owner/repo (2, 1 or 0)")
      ->capture_default_str()
      ->check(CLI::Range(0, 2));
  extract->add_option("--owner", o.owner, "Owner when fewer than 2 levels");
  extract->add_option("--repo", o.repo, "Repository when no level names it");
  extract->add_option("--workers", o.workers, "Parse workers (0 = hardware threads)")->capture_default_str();

  CLI::App* dedup_cmd = sub("dedup", "Remove exact duplicate examples", cmd_dedup);
  add_corpus_in(dedup_cmd);
  dedup_cmd->add_option("--out", o.out, "Output corpus stem")->required();

  CLI::App* split_cmd = sub("split", "Seeded train/valid/test split", cmd_split);
  add_corpus_in(split_cmd);
  split_cmd->add_option("--out", o.out, "Output directory (train.*, valid.*, test.*)")->required();
  split_cmd->add_option("--valid-size", o.valid_size)->capture_default_str();
  split_cmd->add_option("--test-size", o.test_size)->capture_default_str();
  split_cmd->add_option("--seed", o.seed)->capture_default_str();

  CLI::App* stats = sub("stats", "Corpus size and per-example token statistics", cmd_stats);
  add_corpus_in(stats);
  stats->add_option("--format", o.stats_format)->check(CLI::IsMember({"table", "kv", "both"}))->capture_default_str();

  CLI::App* learn = sub("learn-bpe", "Learn BPE merges from text files", cmd_learn_bpe);
  learn->add_option("--in", o.bpe_inputs, "Text files, one example per line")->required()->check(CLI::ExistingFile);
  learn->add_option("--model", o.model, "Output model file")->required();
  learn->add_option("--merges", o.merges, "Number of merges")->capture_default_str();
  add_bpe_flags(learn);

  CLI::App* apply = sub("apply-bpe", "Subtokenize a text file", cmd_apply_bpe);
  apply->add_option("--model", o.model)->required()->check(CLI::ExistingFile);
  apply->add_option("--in", o.in)->required()->check(CLI::ExistingFile);
  apply->add_option("--out", o.out)->required();
  apply->add_option("--marker", o.marker, "Continuation marker")->capture_default_str();
  add_bpe_flags(apply);

  CLI::App* revert = sub("revert-bpe", "Undo BPE subtokenization", cmd_revert_bpe);
  revert->add_option("--in", o.in)->required()->check(CLI::ExistingFile);
  revert->add_option("--out", o.out)->required();
  revert->add_option("--marker", o.marker, "Continuation marker")->capture_default_str();

  CLI::App* bleu = sub("bleu", "Corpus BLEU against one reference", cmd_bleu);
  bleu->add_option("--candidates", o.candidates)->required()->check(CLI::ExistingFile);
  bleu->add_option("--references", o.references)->required()->check(CLI::ExistingFile);

  CLI::App* bt = sub("assemble-bt", "Append code-only examples with synthetic docstrings", cmd_assemble_bt);
  bt->add_option("--parallel", o.parallel, "Parallel corpus stem")->required();
  bt->add_option("--code-only", o.code_only, "Code-only corpus stem")->required();
  bt->add_option("--synthetic", o.synthetic, "Synthetic docstrings, one per code-only example")
      ->required()
      ->check(CLI::ExistingFile);
  bt->add_option("--out", o.out, "Output corpus stem (plus <stem>.provenance)")->required();

  CLI::App* rt = sub("roundtrip-check", "Check that every example reparses to its canonical form", cmd_roundtrip_check);
  rt->add_option("--corpus", o.corpora, "Corpus stems")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  Logger log{err, quiet ? 0 : 1 + verbose};
  if (!quiet) err << "# resolved configuration\n" << app.config_to_str(true, false);
  try {
    return handler(o, out, log);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace pycorpus::cli
