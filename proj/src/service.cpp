#include "minutes/service.hpp"

#include <mutex>

#include "minutes/report.hpp"
#include "minutes/search.hpp"
#include "minutes/store.hpp"

namespace fs = std::filesystem;

namespace minutes::api {

struct Service::Entry {
  Entry(fs::path r, Meeting m) : root(std::move(r)), meeting(std::move(m)) {}

  fs::path root;
  mutable std::shared_mutex mutex;
  Meeting meeting;
};

namespace {

std::string content_type_for(const fs::path& path) {
  static const std::map<std::string, std::string> kTypes = {
      {".mp3", "audio/mpeg"}, {".wav", "audio/wav"},  {".ogg", "audio/ogg"},
      {".oga", "audio/ogg"},  {".m4a", "audio/mp4"},  {".flac", "audio/flac"},
      {".mp4", "video/mp4"},  {".webm", "video/webm"}, {".ogv", "video/ogg"},
  };
  auto it = kTypes.find(path.extension().string());
  return it == kTypes.end() ? "application/octet-stream" : it->second;
}

json::json names_of(const auto& versions) {
  json::json names = json::json::array();
  for (const auto& [name, version] : versions) names.push_back(name);
  return names;
}

// Which alignment a view shows: the annotator's own one when it exists,
// otherwise the shared one (created on first access).
AlignmentKey view_key(const Meeting& m, const ViewQuery& q) {
  AlignmentKey own{*q.transcript, *q.summary, q.annotator.value_or("")};
  if (!own.annotator.empty() && m.find_alignment(own)) return own;
  return {*q.transcript, *q.summary, ""};
}

json::json render_view(const Meeting& m, const ViewQuery& q) {
  json::json view = {{"meeting", m.id()},
                     {"revision", m.revision()},
                     {"transcripts", names_of(m.transcripts())},
                     {"summaries", names_of(m.summaries())},
                     {"media", m.media().has_value()}};
  if (q.transcript) view["transcript"] = json::to_json(m.transcript(*q.transcript));
  if (q.summary) view["summary"] = json::to_json(m.summary(*q.summary));
  if (q.transcript && q.summary) {
    view["alignment"] = json::to_json(*m.find_alignment(view_key(m, q)));
    if (q.annotator) {
      const EvaluationKey key{*q.transcript, *q.summary, *q.annotator};
      if (const auto* record = m.find_evaluation(key)) {
        view["evaluation"] = json::to_json(*record);
      } else {
        view["evaluation"] = json::to_json(EvaluationRecord{key, {}, std::nullopt});
      }
    }
  }
  return view;
}

}  // namespace

Service::Service(fs::path corpus) : corpus_(std::move(corpus)) {
  std::vector<fs::path> roots;
  if (store::is_meeting_dir(corpus_)) {
    roots.push_back(corpus_);
  } else {
    roots = store::list_meetings(corpus_);
  }
  for (const auto& root : roots) {
    Meeting meeting = store::load_meeting(root);
    const std::string id = meeting.id();
    if (meetings_.contains(id)) {
      throw Error(Errc::kAlreadyExists, "meeting id '" + id + "' appears twice in " +
                                            corpus_.string());
    }
    meetings_.emplace(id, std::make_unique<Entry>(root, std::move(meeting)));
  }
}

Service::~Service() = default;

Service::Entry& Service::entry(const std::string& id) const {
  auto it = meetings_.find(id);
  if (it == meetings_.end()) throw Error(Errc::kNotFound, "no meeting with id '" + id + "'");
  return *it->second;
}

std::vector<std::string> Service::meeting_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, e] : meetings_) ids.push_back(id);
  return ids;
}

json::json Service::list() const {
  json::json out = json::json::array();
  for (const auto& [id, e] : meetings_) {
    std::shared_lock lock(e->mutex);
    out.push_back({{"id", id},
                   {"revision", e->meeting.revision()},
                   {"transcripts", names_of(e->meeting.transcripts())},
                   {"summaries", names_of(e->meeting.summaries())},
                   {"media", e->meeting.media().has_value()}});
  }
  return out;
}

json::json Service::get_meeting(const std::string& id) const {
  auto& e = entry(id);
  std::shared_lock lock(e.mutex);
  return json::snapshot(e.meeting);
}

json::json Service::get_view(const std::string& id, const ViewQuery& query) {
  auto& e = entry(id);
  if (query.annotator && !is_valid_name(*query.annotator)) {
    throw Error(Errc::kInvalidName, "invalid annotator name '" + *query.annotator + "'");
  }
  {
    std::shared_lock lock(e.mutex);
    const Meeting& m = e.meeting;
    if (query.transcript) m.transcript(*query.transcript);
    if (query.summary) m.summary(*query.summary);
    if (!(query.transcript && query.summary) || m.find_alignment(view_key(m, query))) {
      return render_view(m, query);
    }
  }
  // The pair has never been opened: register its (empty) shared alignment.
  std::unique_lock lock(e.mutex);
  const AlignmentKey key = view_key(e.meeting, query);
  if (!e.meeting.find_alignment(key)) {
    Meeting next = e.meeting;
    next.select_pair(key);
    store::save_meeting(next, e.root);
    e.meeting = std::move(next);
  }
  return render_view(e.meeting, query);
}

MutationOutcome Service::mutate(const std::string& id, std::uint64_t expected_revision,
                                const json::json& ops) {
  auto& e = entry(id);
  std::unique_lock lock(e.mutex);
  MutationOutcome outcome;
  outcome.revision = e.meeting.revision();
  if (expected_revision != e.meeting.revision()) {
    outcome.status = MutationOutcome::Status::kConflict;
    outcome.code = Errc::kConflict;
    outcome.reason = "expected revision " + std::to_string(expected_revision) +
                     ", current revision is " + std::to_string(e.meeting.revision());
    return outcome;
  }
  if (!ops.is_array()) {
    outcome.status = MutationOutcome::Status::kRejected;
    outcome.code = Errc::kMalformedRequest;
    outcome.reason = "'ops' must be an array";
    return outcome;
  }
  if (ops.empty()) return outcome;

  Meeting next = e.meeting;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    try {
      outcome.results.push_back(json::apply_op(next, ops[i]));
    } catch (const Error& err) {
      outcome.status = MutationOutcome::Status::kRejected;
      outcome.op_index = i;
      outcome.code = err.code();
      outcome.reason = err.what();
      outcome.results = json::json::array();
      return outcome;
    }
  }
  next.set_revision(expected_revision + 1);
  try {
    store::save_meeting(next, e.root);
  } catch (const Error& err) {
    outcome.status = MutationOutcome::Status::kRejected;
    outcome.code = err.code();
    outcome.reason = err.what();
    outcome.results = json::json::array();
    return outcome;
  }
  e.meeting = std::move(next);
  outcome.revision = e.meeting.revision();
  return outcome;
}

json::json Service::metrics(const std::string& id, const MetricsQuery& query) const {
  auto& e = entry(id);
  std::shared_lock lock(e.mutex);
  auto built = report::build(e.meeting, query.transcript, query.summary, query.annotators,
                             query.iaa);
  auto out = report::to_json(built, e.meeting);
  out["revision"] = e.meeting.revision();
  return out;
}

json::json Service::search(const std::string& id, const std::string& transcript,
                           const std::string& pattern, bool case_sensitive) const {
  auto& e = entry(id);
  std::shared_lock lock(e.mutex);
  json::json matches = json::json::array();
  for (const auto& match :
       minutes::search(e.meeting.transcript(transcript), pattern, case_sensitive)) {
    matches.push_back(json::to_json(match));
  }
  return {{"revision", e.meeting.revision()},
          {"dialect", kRegexDialect},
          {"matches", std::move(matches)}};
}

MediaFile Service::media(const std::string& id) const {
  auto& e = entry(id);
  std::shared_lock lock(e.mutex);
  if (!e.meeting.media()) {
    throw Error(Errc::kNoMedia, "meeting '" + id + "' has no media file");
  }
  fs::path path = *e.meeting.media();
  if (path.is_relative()) path = e.root / path;
  std::error_code ec;
  auto size = fs::file_size(path, ec);
  if (ec) throw Error(Errc::kNoMedia, "media file " + path.string() + " is not readable");
  return {path, size, content_type_for(path)};
}

std::uint64_t Service::revision(const std::string& id) const {
  auto& e = entry(id);
  std::shared_lock lock(e.mutex);
  return e.meeting.revision();
}

fs::path Service::meeting_root(const std::string& id) const { return entry(id).root; }

}  // namespace minutes::api
