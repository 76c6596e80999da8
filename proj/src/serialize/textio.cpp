#include "pycorpus/textio.hpp"

#include <sstream>
#include <unistd.h>

namespace pycorpus {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return std::move(buffer).str();
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    lines.emplace_back(text, start, end - start);
    start = end + 1;
  }
  return lines;
}

AtomicOutputs::~AtomicOutputs() {
  if (committed_) return;
  for (auto& e : entries_) {
    e.stream.reset();
    std::error_code ec;
    std::filesystem::remove(e.temp, ec);
  }
}

std::ofstream& AtomicOutputs::open(const std::filesystem::path& target) {
  Entry e;
  e.target = target;
  e.temp = target;
  e.temp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(entries_.size());
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  e.stream = std::make_unique<std::ofstream>(e.temp, std::ios::binary | std::ios::trunc);
  if (!*e.stream) throw IoError("cannot create " + e.temp.string());
  entries_.push_back(std::move(e));
  return *entries_.back().stream;
}

void AtomicOutputs::commit() {
  for (auto& e : entries_) {
    e.stream->flush();
    if (!*e.stream) throw IoError("error writing " + e.temp.string());
    e.stream->close();
  }
  for (auto& e : entries_) std::filesystem::rename(e.temp, e.target);
  committed_ = true;
}

void write_lines_atomic(const std::filesystem::path& path, std::span<const std::string> lines) {
  AtomicOutputs out;
  std::ofstream& f = out.open(path);
  for (const auto& line : lines) f << line << '\n';
  out.commit();
}

}  // namespace pycorpus
