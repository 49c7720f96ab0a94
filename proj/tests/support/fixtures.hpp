#ifndef MINUTES_TESTS_FIXTURES_HPP_
#define MINUTES_TESTS_FIXTURES_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "minutes/meeting.hpp"
#include "minutes/store.hpp"

namespace minutes::testing {

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& child) const { return path_ / child; }

 private:
  std::filesystem::path path_;
};

void write_tree(const std::filesystem::path& root, const store::FileTree& tree);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

// 4 DAs: d0,d1 -> first point, d2 -> small talk, d3 unaligned (shared alignment).
// summary_coverage 0.50, annotated_coverage 0.75.
Meeting coverage_fixture();

// 4 DAs, 3 annotators a0..a2: d0 all -> P0; d1 two -> P0 one -> P1;
// d2 unaligned everywhere; d3 all -> small talk. Strict IAA 1/4.
Meeting iaa_fixture();

// A small but realistic meeting: two transcript versions, two summaries,
// shared and per-annotator alignments, one evaluation, timestamps.
Meeting sample_meeting();

enum class Corruption { kDuplicateRow, kScoreSix, kDanglingIndex };

struct CorruptedFile {
  std::string file;  // relative to the meeting root, '/' separated
  std::size_t line;
};

// Damages a saved sample_meeting tree in place.
CorruptedFile corrupt(const std::filesystem::path& meeting_root, Corruption kind);

struct ProcessResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs an executable with arguments, capturing both streams.
ProcessResult run_process(const std::string& exe, const std::vector<std::string>& args);

}  // namespace minutes::testing

#endif  // MINUTES_TESTS_FIXTURES_HPP_
