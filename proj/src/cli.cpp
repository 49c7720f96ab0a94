#include "minutes/cli.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <filesystem>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "minutes/http_server.hpp"
#include "minutes/json.hpp"
#include "minutes/report.hpp"
#include "minutes/service.hpp"
#include "minutes/store.hpp"

namespace fs = std::filesystem;

namespace minutes::cli {
namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted = true; }

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_root(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw UsageError(root.string() + " is not a directory");
}

// A meeting directory, or one meeting of a corpus directory.
fs::path meeting_dir(const fs::path& root, const std::string& meeting) {
  require_root(root);
  if (!meeting.empty()) {
    if (store::is_meeting_dir(root / meeting)) return root / meeting;
    throw UsageError("no meeting '" + meeting + "' under " + root.string());
  }
  if (store::is_meeting_dir(root)) return root;
  auto meetings = store::list_meetings(root);
  if (meetings.size() == 1) return meetings.front();
  throw UsageError(meetings.empty() ? "no meetings under " + root.string()
                                    : root.string() + " holds several meetings; pass --meeting");
}

int cmd_new(const fs::path& root, const std::string& id, const std::string& transcript,
            const std::string& summary, std::ostream& out) {
  store::create_meeting(root, id, transcript, summary);
  out << "created " << (root / id).string() << '\n';
  return kExitOk;
}

int cmd_validate(const fs::path& root, bool as_json, std::ostream& out) {
  require_root(root);
  std::vector<std::pair<std::string, store::Diagnostic>> all;
  auto collect = [&](const fs::path& dir, const std::string& prefix) {
    for (auto& d : store::validate(dir)) {
      if (!d.file.empty() && !prefix.empty()) d.file = prefix + "/" + d.file;
      all.emplace_back(prefix, std::move(d));
    }
  };
  if (store::is_meeting_dir(root)) {
    collect(root, "");
  } else {
    for (const auto& dir : store::list_meetings(root)) collect(dir, dir.filename().string());
  }

  bool has_error = false;
  json::json report = json::json::array();
  for (const auto& [meeting, d] : all) {
    has_error |= d.severity == store::Severity::kError;
    if (as_json) {
      report.push_back({{"severity", store::severity_name(d.severity)},
                        {"code", d.code},
                        {"file", d.file},
                        {"line", d.line},
                        {"column", d.column},
                        {"message", d.message}});
    } else {
      out << store::format_diagnostic(d) << '\n';
    }
  }
  if (as_json) out << report.dump(2) << '\n';
  return has_error ? kExitFailure : kExitOk;
}

int cmd_metrics(const fs::path& dir, const std::string& transcript, const std::string& summary,
                const std::vector<std::string>& annotators, bool want_iaa, bool as_json,
                bool verbose, std::ostream& out) {
  const Meeting meeting = store::load_meeting(dir);
  auto built = report::build(meeting, transcript, summary, annotators, want_iaa);
  if (as_json) {
    out << report::to_json(built, meeting).dump(2) << '\n';
  } else {
    out << report::format_human(built, meeting, verbose);
  }
  return kExitOk;
}

int cmd_serve(const fs::path& root, const std::string& host, int port, std::ostream& err) {
  require_root(root);
  api::Service service(root);
  api::HttpServer server(service);
  if (!server.bind(host, port)) {
    err << "cannot listen on " << host << ':' << port << " (port in use?)\n";
    return kExitFailure;
  }
  err << "serving " << service.meeting_ids().size() << " meeting(s) from " << root.string()
      << " on http://" << host << ':' << server.port() << '\n';

  g_interrupted = false;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::thread listener([&] { server.run(); });
  while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  server.stop();
  listener.join();
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Meeting transcript/summary alignment and evaluation tool", "minutes"};
  app.require_subcommand(1);

  std::string root;
  std::string meeting;
  std::string transcript;
  std::string summary;
  std::string annotator;
  std::vector<std::string> annotators;
  std::string id;
  std::string host = "127.0.0.1";
  int port = 8080;
  bool as_json = false;
  bool verbose = false;

  auto* new_cmd = app.add_subcommand("new", "Scaffold an empty meeting in a corpus directory");
  new_cmd->add_option("root", root, "Corpus directory")->required();
  new_cmd->add_option("--id", id, "Meeting id")->required();
  new_cmd->add_option("--transcript", transcript, "Initial transcript version name")
      ->default_str("main");
  new_cmd->add_option("--summary", summary, "Initial summary version name")->default_str("main");

  auto* validate_cmd = app.add_subcommand("validate", "Check a meeting or corpus on disk");
  validate_cmd->add_option("root", root, "Meeting or corpus directory")->required();
  validate_cmd->add_flag("--json", as_json, "Machine-readable output");

  auto* metrics_cmd = app.add_subcommand("metrics", "Coverage and evaluation scores");
  metrics_cmd->add_option("root", root, "Meeting or corpus directory")->required();
  metrics_cmd->add_option("--meeting", meeting, "Meeting id when root is a corpus");
  metrics_cmd->add_option("--transcript", transcript, "Transcript version")->required();
  metrics_cmd->add_option("--summary", summary, "Summary version")->required();
  metrics_cmd->add_option("--annotator", annotator, "Annotator whose evaluation to report");
  metrics_cmd->add_flag("--json", as_json, "Machine-readable output");

  auto* iaa_cmd = app.add_subcommand("iaa", "Strict inter-annotator agreement");
  iaa_cmd->add_option("root", root, "Meeting or corpus directory")->required();
  iaa_cmd->add_option("--meeting", meeting, "Meeting id when root is a corpus");
  iaa_cmd->add_option("--transcript", transcript, "Transcript version")->required();
  iaa_cmd->add_option("--summary", summary, "Summary version")->required();
  iaa_cmd->add_option("--annotators", annotators, "Comma-separated annotator names")
      ->required()
      ->delimiter(',');
  iaa_cmd->add_flag("--json", as_json, "Machine-readable output");
  iaa_cmd->add_flag("--verbose", verbose, "Per-DA agreement breakdown");

  auto* serve_cmd = app.add_subcommand("serve", "Serve a corpus over HTTP");
  serve_cmd->add_option("root", root, "Meeting or corpus directory")->required();
  serve_cmd->add_option("--port", port, "TCP port (0 picks a free one)")
      ->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host, "Interface to bind");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  if (transcript.empty() && new_cmd->parsed()) transcript = "main";
  if (summary.empty() && new_cmd->parsed()) summary = "main";

  try {
    if (new_cmd->parsed()) return cmd_new(root, id, transcript, summary, out);
    if (validate_cmd->parsed()) return cmd_validate(root, as_json, out);
    if (metrics_cmd->parsed()) {
      std::vector<std::string> names;
      if (!annotator.empty()) names.push_back(annotator);
      return cmd_metrics(meeting_dir(root, meeting), transcript, summary, names, false,
                         as_json, false, out);
    }
    if (iaa_cmd->parsed()) {
      return cmd_metrics(meeting_dir(root, meeting), transcript, summary, annotators, true,
                         as_json, verbose, out);
    }
    if (serve_cmd->parsed()) return cmd_serve(root, host, port, err);
  } catch (const UsageError& e) {
    err << "minutes: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "minutes: " << errc_name(e.code()) << ": " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace minutes::cli
