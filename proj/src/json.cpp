#include "minutes/json.hpp"

#include <vector>

namespace minutes::json {
namespace {

[[noreturn]] void malformed(const std::string& message) {
  throw Error(Errc::kMalformedRequest, message);
}

const json& require(const json& op, const char* key) {
  auto it = op.find(key);
  if (it == op.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const json& op, const char* key) {
  const json& v = require(op, key);
  if (!v.is_string()) malformed(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& op, const char* key) {
  auto it = op.find(key);
  if (it == op.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) malformed(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

std::size_t index_field(const json& op, const char* key) {
  const json& v = require(op, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    malformed(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

DaId da_field(const json& v, const char* key) {
  if (!v.is_string()) malformed(std::string("field '") + key + "' must be a DA id string");
  auto id = parse_da_id(v.get<std::string>());
  if (!id) malformed("malformed DA id '" + v.get<std::string>() + "'");
  return *id;
}

PointId point_field(const json& v, const char* key) {
  if (!v.is_string()) malformed(std::string("field '") + key + "' must be a point id string");
  auto id = parse_point_id(v.get<std::string>());
  if (!id) malformed("malformed point id '" + v.get<std::string>() + "'");
  return *id;
}

std::vector<DaId> da_list(const json& op) {
  const json& v = require(op, "das");
  if (!v.is_array()) malformed("field 'das' must be an array of DA ids");
  std::vector<DaId> ids;
  for (const auto& item : v) ids.push_back(da_field(item, "das"));
  return ids;
}

// Absent -> disengaged; null -> engaged nullopt; number -> milliseconds.
std::optional<std::optional<Millis>> time_field(const json& op, const char* key) {
  auto it = op.find(key);
  if (it == op.end()) return std::nullopt;
  if (it->is_null()) return std::optional<Millis>{};
  if (!it->is_number()) malformed(std::string("field '") + key + "' must be seconds or null");
  return std::optional<Millis>{millis_from_seconds(it->get<double>())};
}

std::optional<int> score_field(const json& op, const char* key) {
  auto it = op.find(key);
  if (it == op.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) malformed(std::string("field '") + key + "' must be an integer");
  return it->get<int>();
}

AlignmentKey alignment_key(const json& op) {
  return {string_field(op, "transcript"), string_field(op, "summary"),
          optional_string(op, "annotator").value_or("")};
}

EvaluationKey evaluation_key(const json& op) {
  return {string_field(op, "transcript"), string_field(op, "summary"),
          string_field(op, "annotator")};
}

json optional_seconds(const std::optional<Millis>& t) {
  return t ? json(seconds_from_millis(*t)) : json(nullptr);
}

json optional_value(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }
json optional_value(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json apply_op_unchecked(Meeting& m, const json& op) {
  if (!op.is_object()) malformed("each op must be an object");
  const std::string kind = string_field(op, "op");

  if (kind == "split") {
    auto [left, right] = m.split_da(string_field(op, "transcript"), da_field(require(op, "da"), "da"),
                                    index_field(op, "offset"));
    return {{"left", to_string(left)}, {"right", to_string(right)}};
  }
  if (kind == "merge") {
    auto merged = m.merge_das(string_field(op, "transcript"),
                              da_field(require(op, "first"), "first"),
                              da_field(require(op, "second"), "second"));
    return {{"da", to_string(merged)}};
  }
  if (kind == "edit") {
    DaEdit edit;
    edit.speaker = optional_string(op, "speaker");
    edit.text = optional_string(op, "text");
    edit.start = time_field(op, "start");
    edit.end = time_field(op, "end");
    m.edit_da(string_field(op, "transcript"), da_field(require(op, "da"), "da"), edit);
    return json::object();
  }
  if (kind == "insert") {
    NewDa fields{string_field(op, "speaker"), string_field(op, "text"), std::nullopt,
                 std::nullopt};
    if (auto t = time_field(op, "start")) fields.start = *t;
    if (auto t = time_field(op, "end")) fields.end = *t;
    auto id = m.insert_da(string_field(op, "transcript"), index_field(op, "position"),
                          std::move(fields));
    return {{"da", to_string(id)}};
  }
  if (kind == "delete") {
    m.delete_da(string_field(op, "transcript"), da_field(require(op, "da"), "da"));
    return json::object();
  }
  if (kind == "add_point") {
    std::size_t indent = op.contains("indent") ? index_field(op, "indent") : 0;
    auto id = m.add_summary_point(string_field(op, "summary"), index_field(op, "position"),
                                  string_field(op, "text"), indent);
    return {{"point", to_string(id)}};
  }
  if (kind == "edit_point") {
    std::optional<std::size_t> indent;
    if (op.contains("indent")) indent = index_field(op, "indent");
    m.edit_summary_point(string_field(op, "summary"), point_field(require(op, "point"), "point"),
                         optional_string(op, "text"), indent);
    return json::object();
  }
  if (kind == "delete_point") {
    m.delete_summary_point(string_field(op, "summary"),
                           point_field(require(op, "point"), "point"));
    return json::object();
  }
  if (kind == "align") {
    const std::string raw = string_field(op, "target");
    auto target = parse_target(raw);
    if (!target) malformed("malformed target '" + raw + "'");
    auto das = da_list(op);
    m.align(alignment_key(op), das, *target);
    return json::object();
  }
  if (kind == "unalign") {
    const bool by_das = op.contains("das");
    const bool by_point = op.contains("point");
    if (by_das == by_point) malformed("unalign needs exactly one of 'das' or 'point'");
    if (by_das) {
      auto das = da_list(op);
      m.unalign(alignment_key(op), das);
    } else {
      m.unalign_point(alignment_key(op), point_field(op["point"], "point"));
    }
    return json::object();
  }
  if (kind == "set_scores") {
    PointScores scores{score_field(op, "adequacy"), score_field(op, "grammaticality"),
                       score_field(op, "fluency")};
    m.set_scores(evaluation_key(op), point_field(require(op, "point"), "point"), scores);
    return json::object();
  }
  if (kind == "set_doc_adequacy") {
    require(op, "score");
    m.set_doc_adequacy(evaluation_key(op), score_field(op, "score"));
    return json::object();
  }
  if (kind == "add_transcript") {
    m.add_transcript_version(string_field(op, "name"), optional_string(op, "copy_from"));
    return json::object();
  }
  if (kind == "add_summary") {
    m.add_summary_version(string_field(op, "name"), optional_string(op, "indent_symbol"),
                          optional_string(op, "copy_from"));
    return json::object();
  }
  malformed("unknown op '" + kind + "'");
}

}  // namespace

std::string target_to_string(const AlignmentTarget& target) {
  if (const auto* point = std::get_if<PointId>(&target)) return to_string(*point);
  return "M:" + std::string(meta_label_name(std::get<MetaLabel>(target)));
}

std::optional<AlignmentTarget> parse_target(std::string_view s) {
  if (s.starts_with("M:")) {
    if (auto label = parse_meta_label(s.substr(2))) return AlignmentTarget{*label};
    return std::nullopt;
  }
  if (auto point = parse_point_id(s)) return AlignmentTarget{*point};
  return std::nullopt;
}

json to_json(const metrics::CoverageReport& r) {
  return {{"total_das", r.total_das},
          {"das_to_points", r.das_to_points},
          {"das_to_meta", r.das_to_meta},
          {"summary_coverage", r.summary_coverage},
          {"annotated_coverage", r.annotated_coverage}};
}

json to_json(const metrics::DocScores& s) {
  return {{"avg_adequacy", optional_value(s.avg_adequacy)},
          {"avg_grammaticality", optional_value(s.avg_grammaticality)},
          {"avg_fluency", optional_value(s.avg_fluency)},
          {"doc_adequacy", optional_value(s.doc_adequacy)},
          {"n_scored_points", s.n_scored_points}};
}

json to_json(const metrics::Agreement& a, const TranscriptVersion& transcript) {
  json per_da = json::array();
  for (std::size_t i = 0; i < a.per_da.size() && i < transcript.das.size(); ++i) {
    per_da.push_back({{"da", to_string(transcript.das[i].id)},
                      {"point", a.per_da[i] ? json(to_string(*a.per_da[i])) : json(nullptr)}});
  }
  return {{"iaa", a.value},
          {"agreeing", a.agreeing},
          {"total_das", a.total_das},
          {"per_da", std::move(per_da)}};
}

json to_json(const TranscriptVersion& transcript) {
  json das = json::array();
  for (const auto& da : transcript.das) {
    das.push_back({{"id", to_string(da.id)},
                   {"speaker", da.speaker},
                   {"text", da.text},
                   {"start", optional_seconds(da.start)},
                   {"end", optional_seconds(da.end)}});
  }
  return {{"name", transcript.name}, {"das", std::move(das)}};
}

json to_json(const SummaryVersion& summary) {
  json points = json::array();
  for (const auto& p : summary.points) {
    points.push_back({{"id", to_string(p.id)}, {"text", p.text}, {"indent", p.indent}});
  }
  return {{"name", summary.name},
          {"indent_symbol", summary.indent_symbol},
          {"points", std::move(points)}};
}

json to_json(const Alignment& alignment) {
  json targets = json::object();
  for (const auto& [da, target] : alignment.targets) {
    targets[to_string(da)] = target_to_string(target);
  }
  return {{"transcript", alignment.key.transcript},
          {"summary", alignment.key.summary},
          {"annotator", alignment.key.annotator},
          {"targets", std::move(targets)}};
}

json to_json(const EvaluationRecord& record) {
  json points = json::object();
  for (const auto& [point, s] : record.per_point) {
    points[to_string(point)] = {{"adequacy", optional_value(s.adequacy)},
                                {"grammaticality", optional_value(s.grammaticality)},
                                {"fluency", optional_value(s.fluency)}};
  }
  return {{"transcript", record.key.transcript},
          {"summary", record.key.summary},
          {"annotator", record.key.annotator},
          {"points", std::move(points)},
          {"doc_adequacy", optional_value(record.doc_adequacy)}};
}

json to_json(const SearchMatch& match) {
  return {{"da", to_string(match.da)}, {"begin", match.begin}, {"end", match.end}};
}

json snapshot(const Meeting& meeting) {
  json transcripts = json::object();
  for (const auto& [name, tv] : meeting.transcripts()) transcripts[name] = to_json(tv);
  json summaries = json::object();
  for (const auto& [name, sv] : meeting.summaries()) summaries[name] = to_json(sv);
  json alignments = json::array();
  for (const auto& [key, a] : meeting.alignments()) alignments.push_back(to_json(a));
  json evaluations = json::array();
  for (const auto& [key, e] : meeting.evaluations()) evaluations.push_back(to_json(e));
  return {{"id", meeting.id()},
          {"revision", meeting.revision()},
          {"media", meeting.media() ? json(*meeting.media()) : json(nullptr)},
          {"indent_symbol", meeting.default_indent_symbol()},
          {"transcripts", std::move(transcripts)},
          {"summaries", std::move(summaries)},
          {"alignments", std::move(alignments)},
          {"evaluations", std::move(evaluations)}};
}

json apply_op(Meeting& meeting, const json& op) {
  try {
    return apply_op_unchecked(meeting, op);
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
}

}  // namespace minutes::json
