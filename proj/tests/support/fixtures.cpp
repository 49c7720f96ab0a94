#include "fixtures.hpp"

#include <sys/wait.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace minutes::testing {

TempDir::TempDir() {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  for (;;) {
    path_ = fs::temp_directory_path() /
            ("minutes-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    if (fs::create_directory(path_)) break;
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::permissions(path_, fs::perms::owner_all, fs::perm_options::add, ec);
  fs::remove_all(path_, ec);
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_tree(const fs::path& root, const store::FileTree& tree) {
  fs::create_directories(root);
  for (const auto& [rel, content] : tree) write_file(root / rel, content);
}

Meeting coverage_fixture() {
  Meeting m("coverage");
  m.add_transcript_version("t");
  m.add_summary_version("s");
  std::vector<DaId> das;
  for (std::size_t i = 0; i < 4; ++i) {
    das.push_back(m.insert_da("t", i, {"A", "utterance " + std::to_string(i), {}, {}}));
  }
  PointId p0 = m.add_summary_point("s", 0, "first point", 0);
  m.add_summary_point("s", 1, "second point", 0);
  m.add_summary_point("s", 2, "third point", 1);
  const AlignmentKey key{"t", "s", ""};
  const DaId hunk[] = {das[0], das[1]};
  const DaId chat[] = {das[2]};
  m.align(key, hunk, p0);
  m.align(key, chat, MetaLabel::kSmallTalk);
  return m;
}

Meeting iaa_fixture() {
  Meeting m("agreement");
  m.add_transcript_version("t");
  m.add_summary_version("s");
  std::vector<DaId> das;
  for (std::size_t i = 0; i < 4; ++i) {
    das.push_back(m.insert_da("t", i, {i % 2 ? "B" : "A", "da " + std::to_string(i), {}, {}}));
  }
  PointId p0 = m.add_summary_point("s", 0, "S1", 0);
  PointId p1 = m.add_summary_point("s", 1, "S2", 0);
  for (int a = 0; a < 3; ++a) {
    const AlignmentKey key{"t", "s", "a" + std::to_string(a)};
    const DaId d0[] = {das[0]};
    const DaId d1[] = {das[1]};
    const DaId d3[] = {das[3]};
    m.align(key, d0, p0);
    m.align(key, d1, a == 2 ? p1 : p0);
    m.align(key, d3, MetaLabel::kSmallTalk);
  }
  return m;
}

Meeting sample_meeting() {
  Meeting m("ES2002a");
  m.set_media("audio.wav");
  m.add_transcript_version("manual");
  const std::vector<NewDa> lines = {
      {"PM", "okay good morning everybody", 0, 2'100},
      {"ME", "morning", 2'100, 2'600},
      {"PM", "so today we kick off the remote control project", 2'600, 6'000},
      {"PM", "the budget is twenty five euro per unit", 6'000, 9'500},
      {"ID", "is that the production cost or the selling price", 9'500, 12'250},
      {"PM", "production cost\tselling price is fifty", 12'250, 14'000},
      {"UI", "did anyone watch the match yesterday", 14'000, 16'000},
      {"PM", "let's meet again after lunch", 16'000, 18'000},
  };
  for (std::size_t i = 0; i < lines.size(); ++i) m.insert_da("manual", i, lines[i]);
  m.add_transcript_version("asr", "manual");
  m.edit_da("asr", m.transcript("asr").das[0].id, {{}, "okay could morning everybody", {}, {}});

  m.add_summary_version("minA");
  PointId kickoff = m.add_summary_point("minA", 0, "Project kick-off", 0);
  PointId budget = m.add_summary_point("minA", 1, "Budget: 25 EUR production cost", 1);
  PointId price = m.add_summary_point("minA", 2, "Selling price 50 EUR", 1);
  PointId next = m.add_summary_point("minA", 3, "Next meeting after lunch", 0);
  m.add_summary_version("minB", "*");
  m.add_summary_point("minB", 0, "Remote control project started", 0);
  m.add_summary_point("minB", 1, "* costs discussed", 1);

  const auto& das = m.transcript("manual").das;
  auto align = [&](const std::string& annotator, std::vector<std::size_t> idx,
                   AlignmentTarget target) {
    std::vector<DaId> ids;
    for (auto i : idx) ids.push_back(das[i].id);
    m.align({"manual", "minA", annotator}, ids, target);
  };
  for (const std::string annotator : {"", "E1", "E2"}) {
    align(annotator, {0, 1}, MetaLabel::kOrganizational);
    align(annotator, {2}, kickoff);
    align(annotator, {3, 4}, budget);
    align(annotator, {5}, annotator == "E2" ? budget : price);
    align(annotator, {7}, next);
  }
  align("", {6}, MetaLabel::kSmallTalk);
  m.select_pair({"asr", "minB", ""});

  const EvaluationKey eval{"manual", "minA", "E1"};
  m.set_scores(eval, kickoff, {4, 5, 5});
  m.set_scores(eval, budget, {5, 4, 4});
  m.set_scores(eval, price, {3, 5, {}});
  m.set_doc_adequacy(eval, 4);
  return m;
}

namespace {

std::vector<std::string> split_lines(const std::string& content) {
  std::vector<std::string> lines;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& line : lines) out += line + "\n";
  return out;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

}  // namespace

CorruptedFile corrupt(const fs::path& root, Corruption kind) {
  switch (kind) {
    case Corruption::kDuplicateRow: {
      const std::string rel = "alignments/manual__minA.tsv";
      auto lines = split_lines(read_file(root / rel));
      lines.push_back(lines.back());
      write_file(root / rel, join_lines(lines));
      return {rel, lines.size()};
    }
    case Corruption::kScoreSix: {
      const std::string rel = "evaluations/manual__minA__E1.tsv";
      auto lines = split_lines(read_file(root / rel));
      auto tab = lines[0].find('\t');
      auto next = lines[0].find('\t', tab + 1);
      lines[0] = lines[0].substr(0, tab + 1) + "6" + lines[0].substr(next);
      write_file(root / rel, join_lines(lines));
      return {rel, 1};
    }
    case Corruption::kDanglingIndex: {
      const std::string rel = "alignments/manual__minA.tsv";
      auto lines = split_lines(read_file(root / rel));
      lines.push_back("99\tP0");
      write_file(root / rel, join_lines(lines));
      return {rel, lines.size()};
    }
  }
  throw std::logic_error("unknown corruption");
}

ProcessResult run_process(const std::string& exe, const std::vector<std::string>& args) {
  TempDir capture;
  std::string cmd = shell_quote(exe);
  for (const auto& arg : args) cmd += " " + shell_quote(arg);
  cmd += " >" + shell_quote((capture / "out").string());
  cmd += " 2>" + shell_quote((capture / "err").string());
  cmd += " </dev/null";
  const int status = std::system(cmd.c_str());
  ProcessResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(capture / "out");
  result.err = read_file(capture / "err");
  return result;
}

}  // namespace minutes::testing
