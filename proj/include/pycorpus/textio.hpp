#pragma once

// Small file helpers shared by the corpus tools.

#include <filesystem>
#include <fstream>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pycorpus {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[nodiscard]] std::string read_file(const std::filesystem::path& path);

/// Lines without their LF terminators. A final line lacking LF still counts.
[[nodiscard]] std::vector<std::string> read_lines(const std::filesystem::path& path);

/// A group of output files written under temporary names and renamed into
/// place together by commit(). Uncommitted temporaries are removed on
/// destruction.
class AtomicOutputs {
 public:
  AtomicOutputs() = default;
  AtomicOutputs(const AtomicOutputs&) = delete;
  AtomicOutputs& operator=(const AtomicOutputs&) = delete;
  ~AtomicOutputs();

  std::ofstream& open(const std::filesystem::path& target);
  void commit();

 private:
  struct Entry {
    std::filesystem::path target;
    std::filesystem::path temp;
    std::unique_ptr<std::ofstream> stream;
  };
  std::vector<Entry> entries_;
  bool committed_ = false;
};

void write_lines_atomic(const std::filesystem::path& path, std::span<const std::string> lines);

}  // namespace pycorpus
