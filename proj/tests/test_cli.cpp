#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <httplib.h>
#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>

#include <chrono>
#include <regex>
#include <sstream>
#include <thread>

#include "minutes/cli.hpp"
#include "minutes/report.hpp"
#include "minutes/store.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

extern char** environ;

using namespace minutes;
using namespace minutes::testing;
using Json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli_run(std::vector<std::string> args) {
  args.insert(args.begin(), "minutes");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

Meeting constant_evaluation(int k) {
  Meeting m = coverage_fixture();
  const auto points = m.summary("s").points;
  for (const auto& p : points) m.set_scores({"t", "s", "E"}, p.id, {k, k, k});
  m.set_doc_adequacy({"t", "s", "E"}, k);
  return m;
}

}  // namespace

TEST_CASE("new then validate") {
  TempDir dir;
  auto created = cli_run({"new", dir.path().string(), "--id", "m1"});
  CHECK(created.code == 0);
  CHECK(fs::exists(dir / "m1" / "meeting.meta"));
  auto valid = cli_run({"validate", dir.path().string()});
  CHECK(valid.code == 0);
  CHECK(valid.out.empty());
  CHECK(cli_run({"validate", (dir / "m1").string()}).code == 0);

  auto again = cli_run({"new", dir.path().string(), "--id", "m1"});
  CHECK(again.code == 1);
  CHECK(contains(again.err, "AlreadyExists"));
  CHECK(cli_run({"new", dir.path().string(), "--id", "bad id"}).code == 1);

  auto custom =
      cli_run({"new", dir.path().string(), "--id", "m2", "--transcript", "asr", "--summary", "v1"});
  CHECK(custom.code == 0);
  Meeting m = store::load_meeting(dir / "m2");
  CHECK(m.transcripts().begin()->first == "asr");
  CHECK(m.summaries().begin()->first == "v1");
}

TEST_CASE("validate reports corruptions with their location") {
  for (auto kind : {Corruption::kDuplicateRow, Corruption::kScoreSix, Corruption::kDanglingIndex}) {
    TempDir dir;
    store::save_meeting(sample_meeting(), dir / "ES2002a");
    auto where = corrupt(dir / "ES2002a", kind);
    const std::string loc = where.file + ":" + std::to_string(where.line) + ":";

    auto single = cli_run({"validate", (dir / "ES2002a").string()});
    CAPTURE(single.out);
    CHECK(single.code == 1);
    CHECK(contains(single.out, "error " + loc));

    auto corpus = cli_run({"validate", dir.path().string()});
    CHECK(corpus.code == 1);
    CHECK(contains(corpus.out, "error ES2002a/" + loc));

    auto as_json = cli_run({"validate", (dir / "ES2002a").string(), "--json"});
    CHECK(as_json.code == 1);
    auto diags = Json::parse(as_json.out);
    REQUIRE_FALSE(diags.empty());
    CHECK(diags[0]["file"] == where.file);
    CHECK(diags[0]["line"] == where.line);
  }
}

TEST_CASE("validate warnings do not fail") {
  TempDir dir;
  store::save_meeting(sample_meeting(), dir / "m");
  write_file(dir / "m" / "alignments" / "notes.txt", "hello\n");
  auto r = cli_run({"validate", (dir / "m").string()});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "warning alignments/notes.txt"));
}

TEST_CASE("usage errors exit 2") {
  TempDir dir;
  CHECK(cli_run({}).code == 2);
  CHECK(cli_run({"frobnicate"}).code == 2);
  CHECK(cli_run({"validate", (dir / "missing").string()}).code == 2);
  CHECK(cli_run({"metrics", dir.path().string()}).code == 2);
  CHECK(cli_run({"metrics", (dir / "missing").string(), "--transcript", "t", "--summary", "s"})
            .code == 2);
  CHECK(cli_run({"metrics", dir.path().string(), "--transcript", "t", "--summary", "s"}).code ==
        2);
  CHECK(cli_run({"iaa", dir.path().string(), "--transcript", "t", "--summary", "s"}).code == 2);
}

TEST_CASE("metrics") {
  TempDir dir;
  store::save_meeting(coverage_fixture(), dir / "coverage");
  store::save_meeting(constant_evaluation(5), dir / "five");
  store::save_meeting(sample_meeting(), dir / "ES2002a");

  auto cov = cli_run({"metrics", (dir / "coverage").string(), "--transcript", "t", "--summary", "s"});
  CHECK(cov.code == 0);
  CHECK(contains(cov.out, "summary_coverage: 0.50\n"));
  CHECK(contains(cov.out, "annotated_coverage: 0.75\n"));

  auto five = cli_run({"metrics", dir.path().string(), "--meeting", "five", "--transcript", "t",
                       "--summary", "s", "--annotator", "E"});
  CHECK(five.code == 0);
  CHECK(contains(five.out, "avg_adequacy: 5.00\n"));
  CHECK(contains(five.out, "avg_grammaticality: 5.00\n"));
  CHECK(contains(five.out, "avg_fluency: 5.00\n"));
  CHECK(contains(five.out, "doc_adequacy: 5\n"));

  auto unknown = cli_run({"metrics", (dir / "coverage").string(), "--transcript", "t",
                          "--summary", "nope"});
  CHECK(unknown.code == 1);
  CHECK(contains(unknown.err, "UnknownVersion"));

  auto js = cli_run({"metrics", (dir / "ES2002a").string(), "--transcript", "manual",
                     "--summary", "minA", "--annotator", "E1", "--json"});
  CHECK(js.code == 0);
  Meeting m = sample_meeting();
  const std::vector<std::string> names = {"E1"};
  CHECK(Json::parse(js.out) == report::to_json(report::build(m, "manual", "minA", names, false), m));
}

TEST_CASE("iaa") {
  TempDir dir;
  store::save_meeting(iaa_fixture(), dir / "agreement");
  store::save_meeting(meeting_from_codes({{0, 1, 1, 0, -1}, {0, 1, 1, 0, -1}}, 5, 2), dir / "same");
  const auto agreement = (dir / "agreement").string();

  auto r = cli_run({"iaa", agreement, "--transcript", "t", "--summary", "s", "--annotators",
                    "a0,a1,a2"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "iaa: 0.25\n"));

  auto same = cli_run({"iaa", (dir / "same").string(), "--transcript", "t", "--summary", "s",
                       "--annotators", "a0,a1"});
  CHECK(same.code == 0);
  CHECK(contains(same.out, "iaa: 0.80\n"));

  auto one = cli_run({"iaa", agreement, "--transcript", "t", "--summary", "s", "--annotators", "a0"});
  CHECK(one.code == 1);
  CHECK(contains(one.err, "TooFewAnnotators"));

  auto unknown = cli_run({"iaa", agreement, "--transcript", "t", "--summary", "s",
                          "--annotators", "a0,zz"});
  CHECK(unknown.code == 1);

  auto verbose = cli_run({"iaa", agreement, "--transcript", "t", "--summary", "s", "--annotators",
                          "a0,a1,a2", "--verbose"});
  CHECK(verbose.code == 0);
  CHECK(std::regex_search(verbose.out, std::regex("da 0 \\[[^\\]]*\\]: agree on point 0\n")));
  CHECK(std::regex_search(verbose.out, std::regex("da 1 \\[[^\\]]*\\]: no agreement\n")));

  auto js = cli_run({"iaa", agreement, "--transcript", "t", "--summary", "s", "--annotators",
                     "a0,a1,a2", "--json"});
  Meeting m = iaa_fixture();
  const std::vector<std::string> names = {"a0", "a1", "a2"};
  CHECK(Json::parse(js.out) == report::to_json(report::build(m, "t", "s", names, true), m));
}

TEST_CASE("the installed binary") {
  TempDir dir;
  auto created = run_process(MINUTES_CLI_PATH, {"new", dir.path().string(), "--id", "m"});
  CHECK(created.exit_code == 0);
  CHECK(run_process(MINUTES_CLI_PATH, {"validate", dir.path().string()}).exit_code == 0);
  CHECK(run_process(MINUTES_CLI_PATH, {"validate", (dir / "none").string()}).exit_code == 2);
  auto help = run_process(MINUTES_CLI_PATH, {"--help"});
  CHECK(help.exit_code == 0);
  CHECK(contains(help.out, "validate"));
}

TEST_CASE("serve answers HTTP until terminated") {
  TempDir dir;
  store::save_meeting(coverage_fixture(), dir / "coverage");
  const auto log = dir / "serve.log";

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, 2, log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  const std::string exe = MINUTES_CLI_PATH;
  const std::string root = dir.path().string();
  std::vector<char*> argv = {const_cast<char*>(exe.c_str()), const_cast<char*>("serve"),
                             const_cast<char*>(root.c_str()), const_cast<char*>("--port"),
                             const_cast<char*>("0"), nullptr};
  pid_t pid = 0;
  REQUIRE(posix_spawn(&pid, exe.c_str(), &actions, nullptr, argv.data(), environ) == 0);
  posix_spawn_file_actions_destroy(&actions);

  int port = 0;
  const std::regex banner("serving 1 meeting\\(s\\) from .* on http://127\\.0\\.0\\.1:(\\d+)");
  for (int i = 0; i < 100 && port == 0; ++i) {
    std::smatch match;
    const auto text = read_file(log);
    if (std::regex_search(text, match, banner)) port = std::stoi(match[1]);
    else std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  CHECK(port > 0);
  if (port > 0) {
    httplib::Client client("127.0.0.1", port);
    auto r = client.Get("/meetings");
    REQUIRE(r);
    CHECK(r->status == 200);
    CHECK(Json::parse(r->body)[0]["id"] == "coverage");
  }
  kill(pid, SIGTERM);
  int status = 0;
  REQUIRE(waitpid(pid, &status, 0) == pid);
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
}
