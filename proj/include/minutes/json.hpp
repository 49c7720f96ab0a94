#ifndef MINUTES_JSON_HPP_
#define MINUTES_JSON_HPP_

#include <string>

#include <json.hpp>

#include "minutes/meeting.hpp"
#include "minutes/metrics.hpp"
#include "minutes/search.hpp"

// JSON encodings shared by the HTTP service and the CLI.
namespace minutes::json {

using nlohmann::json;

// "p3" for points, "M:small_talk" / "M:organizational" for meta-labels.
std::string target_to_string(const AlignmentTarget& target);
std::optional<AlignmentTarget> parse_target(std::string_view s);

json to_json(const metrics::CoverageReport& report);
json to_json(const metrics::DocScores& scores);
json to_json(const metrics::Agreement& agreement, const TranscriptVersion& transcript);
json to_json(const TranscriptVersion& transcript);
json to_json(const SummaryVersion& summary);
json to_json(const Alignment& alignment);
json to_json(const EvaluationRecord& record);
json to_json(const SearchMatch& match);

// Everything about a meeting, ids included.
json snapshot(const Meeting& meeting);

// Applies one command of the mutation vocabulary and returns its result
// (new ids, where the command creates any). Throws minutes::Error; malformed
// commands raise Errc::kMalformedRequest.
//
//   split           transcript, da, offset
//   merge           transcript, first, second
//   edit            transcript, da, [speaker], [text], [start], [end]
//   insert          transcript, position, speaker, text, [start], [end]
//   delete          transcript, da
//   add_point       summary, position, text, [indent]
//   edit_point      summary, point, [text], [indent]
//   delete_point    summary, point
//   align           transcript, summary, [annotator], das, target
//   unalign         transcript, summary, [annotator], das | point
//   set_scores      transcript, summary, annotator, point,
//                   [adequacy], [grammaticality], [fluency]
//   set_doc_adequacy transcript, summary, annotator, score
//   add_transcript  name, [copy_from]
//   add_summary     name, [indent_symbol], [copy_from]
//
// Times are seconds (number) or null to clear; scores are 1..5 or null.
json apply_op(Meeting& meeting, const json& op);

}  // namespace minutes::json

#endif  // MINUTES_JSON_HPP_
