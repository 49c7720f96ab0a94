#include "minutes/meeting.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "minutes/text.hpp"

namespace minutes {
namespace {

template <typename Id>
std::optional<Id> parse_prefixed(std::string_view s, char prefix) {
  if (s.size() < 2 || s.front() != prefix) return std::nullopt;
  s.remove_prefix(1);
  if (s.size() > 1 && s.front() == '0') return std::nullopt;
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return Id{value};
}

[[noreturn]] void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

void check_speaker(std::string_view speaker) {
  if (speaker.empty()) fail(Errc::kInvalidSpeaker, "speaker must not be empty");
  if (speaker.find_first_of("\r\n") != std::string_view::npos) {
    fail(Errc::kInvalidSpeaker, "speaker must not contain newlines");
  }
}

void check_times(const std::optional<Millis>& start,
                 const std::optional<Millis>& end) {
  if ((start && *start < 0) || (end && *end < 0)) {
    fail(Errc::kInvalidTimes, "timestamps must be non-negative");
  }
  if (start && end && *start > *end) {
    fail(Errc::kInvalidTimes, "start time is after end time");
  }
}

void check_score(const std::optional<int>& score) {
  if (score && !is_valid_score(*score)) {
    fail(Errc::kInvalidScore,
         "score " + std::to_string(*score) + " is outside the range 1..5");
  }
}

}  // namespace

std::string to_string(DaId id) { return "d" + std::to_string(id.value); }
std::string to_string(PointId id) { return "p" + std::to_string(id.value); }

std::optional<DaId> parse_da_id(std::string_view s) {
  return parse_prefixed<DaId>(s, 'd');
}

std::optional<PointId> parse_point_id(std::string_view s) {
  return parse_prefixed<PointId>(s, 'p');
}

Millis millis_from_seconds(double seconds) {
  return static_cast<Millis>(std::llround(seconds * 1000.0));
}

double seconds_from_millis(Millis ms) { return static_cast<double>(ms) / 1000.0; }

std::optional<std::size_t> TranscriptVersion::index_of(DaId id) const {
  for (std::size_t i = 0; i < das.size(); ++i) {
    if (das[i].id == id) return i;
  }
  return std::nullopt;
}

const DialogueAct* TranscriptVersion::find(DaId id) const {
  auto i = index_of(id);
  return i ? &das[*i] : nullptr;
}

std::optional<std::size_t> SummaryVersion::index_of(PointId id) const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].id == id) return i;
  }
  return std::nullopt;
}

const SummaryPoint* SummaryVersion::find(PointId id) const {
  auto i = index_of(id);
  return i ? &points[*i] : nullptr;
}

std::string_view meta_label_name(MetaLabel label) noexcept {
  switch (label) {
    case MetaLabel::kSmallTalk: return "small_talk";
    case MetaLabel::kOrganizational: return "organizational";
  }
  return "";
}

std::optional<MetaLabel> parse_meta_label(std::string_view s) {
  if (s == "small_talk") return MetaLabel::kSmallTalk;
  if (s == "organizational") return MetaLabel::kOrganizational;
  return std::nullopt;
}

std::optional<AlignmentTarget> Alignment::target_of(DaId da) const {
  auto it = targets.find(da);
  if (it == targets.end()) return std::nullopt;
  return it->second;
}

std::vector<DaId> hunk_of(const Alignment& alignment,
                          const TranscriptVersion& transcript, PointId point) {
  std::vector<DaId> hunk;
  const AlignmentTarget wanted{point};
  for (const auto& da : transcript.das) {
    auto it = alignment.targets.find(da.id);
    if (it != alignment.targets.end() && it->second == wanted) {
      hunk.push_back(da.id);
    }
  }
  return hunk;
}

bool is_valid_name(std::string_view name) noexcept {
  if (name.empty() || name == "." || name == "..") return false;
  if (name.find("__") != std::string_view::npos) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
  });
}

// Rejects whitespace, control characters, ASCII alphanumerics and backslash.
bool is_valid_indent_symbol(std::string_view symbol) noexcept {
  if (symbol.empty()) return false;
  return std::none_of(symbol.begin(), symbol.end(), [](char ch) {
    const auto c = static_cast<unsigned char>(ch);
    return c < 0x20 || c == 0x7F || c == ' ' || c == '\\' ||
           (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') ||
           (c >= 'a' && c <= 'z');
  });
}

bool is_valid_score(int score) noexcept { return score >= 1 && score <= 5; }

Meeting::Meeting(std::string id) : id_(std::move(id)) {
  if (!is_valid_name(id_)) fail(Errc::kInvalidName, "invalid meeting id '" + id_ + "'");
}

const TranscriptVersion& Meeting::transcript(std::string_view name) const {
  auto it = transcripts_.find(name);
  if (it == transcripts_.end()) {
    fail(Errc::kUnknownVersion, "unknown transcript version '" + std::string(name) + "'");
  }
  return it->second;
}

const SummaryVersion& Meeting::summary(std::string_view name) const {
  auto it = summaries_.find(name);
  if (it == summaries_.end()) {
    fail(Errc::kUnknownVersion, "unknown summary version '" + std::string(name) + "'");
  }
  return it->second;
}

TranscriptVersion& Meeting::transcript_mut(std::string_view name) {
  return const_cast<TranscriptVersion&>(std::as_const(*this).transcript(name));
}

SummaryVersion& Meeting::summary_mut(std::string_view name) {
  return const_cast<SummaryVersion&>(std::as_const(*this).summary(name));
}

const Alignment* Meeting::find_alignment(const AlignmentKey& key) const {
  auto it = alignments_.find(key);
  return it == alignments_.end() ? nullptr : &it->second;
}

const EvaluationRecord* Meeting::find_evaluation(const EvaluationKey& key) const {
  auto it = evaluations_.find(key);
  return it == evaluations_.end() ? nullptr : &it->second;
}

void Meeting::set_media(std::optional<std::string> media) {
  if (media && (media->empty() || media->find_first_of("\r\n") != std::string::npos)) {
    fail(Errc::kInvalidName, "media reference must be a non-empty single line");
  }
  media_ = std::move(media);
  touch();
}

void Meeting::set_default_indent_symbol(std::string symbol) {
  if (!is_valid_indent_symbol(symbol)) {
    fail(Errc::kInvalidIndentSymbol, "invalid indentation symbol '" + symbol + "'");
  }
  default_indent_symbol_ = std::move(symbol);
  touch();
}

void Meeting::add_transcript_version(const std::string& name,
                                     const std::optional<std::string>& copy_from) {
  if (!is_valid_name(name)) fail(Errc::kInvalidName, "invalid version name '" + name + "'");
  if (transcripts_.contains(name)) {
    fail(Errc::kDuplicateVersion, "transcript version '" + name + "' already exists");
  }
  TranscriptVersion version;
  if (copy_from) version = transcript(*copy_from);
  version.name = name;
  transcripts_.emplace(name, std::move(version));
  touch();
}

void Meeting::add_summary_version(const std::string& name,
                                  std::optional<std::string> indent_symbol,
                                  const std::optional<std::string>& copy_from) {
  if (!is_valid_name(name)) fail(Errc::kInvalidName, "invalid version name '" + name + "'");
  if (summaries_.contains(name)) {
    fail(Errc::kDuplicateVersion, "summary version '" + name + "' already exists");
  }
  SummaryVersion version;
  version.indent_symbol = default_indent_symbol_;
  if (copy_from) version = summary(*copy_from);
  version.name = name;
  if (indent_symbol) {
    if (!is_valid_indent_symbol(*indent_symbol)) {
      fail(Errc::kInvalidIndentSymbol, "invalid indentation symbol '" + *indent_symbol + "'");
    }
    version.indent_symbol = std::move(*indent_symbol);
  }
  summaries_.emplace(name, std::move(version));
  touch();
}

void Meeting::check_key(const AlignmentKey& key) const {
  transcript(key.transcript);
  summary(key.summary);
  if (!key.annotator.empty() && !is_valid_name(key.annotator)) {
    fail(Errc::kInvalidName, "invalid annotator name '" + key.annotator + "'");
  }
}

Alignment& Meeting::ensure_alignment(const AlignmentKey& key) {
  auto [it, inserted] = alignments_.try_emplace(key);
  if (inserted) it->second.key = key;
  return it->second;
}

const Alignment& Meeting::select_pair(const AlignmentKey& key) {
  check_key(key);
  if (const auto* existing = find_alignment(key)) return *existing;
  auto& created = ensure_alignment(key);
  touch();
  return created;
}

std::pair<DaId, DaId> Meeting::split_da(std::string_view tver, DaId da,
                                        std::size_t offset) {
  auto& tv = transcript_mut(tver);
  auto index = tv.index_of(da);
  if (!index) fail(Errc::kUnknownDa, "unknown dialogue act " + to_string(da));
  const DialogueAct original = tv.das[*index];
  const std::size_t length = text::char_length(original.text);
  if (offset == 0 || offset >= length) {
    fail(Errc::kOffsetOutOfRange, "split offset " + std::to_string(offset) +
                                      " is outside 1.." + std::to_string(length) +
                                      " (exclusive upper bound)");
  }
  const std::size_t cut = text::byte_offset(original.text, offset);
  const std::string_view whole = original.text;

  DialogueAct left{DaId{tv.next_id}, original.speaker,
                   std::string(text::trim_right(whole.substr(0, cut))),
                   original.start, std::nullopt};
  DialogueAct right{DaId{tv.next_id + 1}, original.speaker,
                    std::string(text::trim_left(whole.substr(cut))), std::nullopt,
                    original.end};
  tv.next_id += 2;
  tv.das[*index] = left;
  tv.das.insert(tv.das.begin() + static_cast<std::ptrdiff_t>(*index) + 1, right);

  for (auto& [key, alignment] : alignments_) {
    if (key.transcript != tver) continue;
    auto it = alignment.targets.find(da);
    if (it == alignment.targets.end()) continue;
    const AlignmentTarget target = it->second;
    alignment.targets.erase(it);
    alignment.targets.emplace(left.id, target);
    alignment.targets.emplace(right.id, target);
  }
  touch();
  return {left.id, right.id};
}

DaId Meeting::merge_das(std::string_view tver, DaId first, DaId second) {
  auto& tv = transcript_mut(tver);
  auto i = tv.index_of(first);
  if (!i) fail(Errc::kUnknownDa, "unknown dialogue act " + to_string(first));
  auto j = tv.index_of(second);
  if (!j) fail(Errc::kUnknownDa, "unknown dialogue act " + to_string(second));
  if (*j != *i + 1) {
    fail(Errc::kNotAdjacent, to_string(first) + " does not immediately precede " +
                                 to_string(second));
  }
  const DialogueAct& a = tv.das[*i];
  const DialogueAct& b = tv.das[*j];
  if (a.speaker != b.speaker) {
    fail(Errc::kSpeakerMismatch, "cannot merge dialogue acts of speakers '" +
                                     a.speaker + "' and '" + b.speaker + "'");
  }
  check_times(a.start, b.end);

  std::vector<std::pair<Alignment*, std::optional<AlignmentTarget>>> updates;
  for (auto& [key, alignment] : alignments_) {
    if (key.transcript != tver) continue;
    auto ta = alignment.target_of(first);
    auto tb = alignment.target_of(second);
    if (ta && tb && *ta != *tb) {
      fail(Errc::kConflictingAlignment,
           "dialogue acts are aligned to different targets in alignment " +
               key.transcript + "/" + key.summary +
               (key.annotator.empty() ? "" : "/" + key.annotator));
    }
    updates.emplace_back(&alignment, ta ? ta : tb);
  }

  DialogueAct merged{DaId{tv.next_id++}, a.speaker, a.text + " " + b.text,
                     a.start, b.end};
  tv.das[*i] = merged;
  tv.das.erase(tv.das.begin() + static_cast<std::ptrdiff_t>(*j));
  for (auto& [alignment, target] : updates) {
    alignment->targets.erase(first);
    alignment->targets.erase(second);
    if (target) alignment->targets.emplace(merged.id, *target);
  }
  touch();
  return merged.id;
}

void Meeting::edit_da(std::string_view tver, DaId da, const DaEdit& edit) {
  auto& tv = transcript_mut(tver);
  auto index = tv.index_of(da);
  if (!index) fail(Errc::kUnknownDa, "unknown dialogue act " + to_string(da));
  DialogueAct updated = tv.das[*index];
  if (edit.speaker) {
    check_speaker(*edit.speaker);
    updated.speaker = *edit.speaker;
  }
  if (edit.text) updated.text = *edit.text;
  if (edit.start) updated.start = *edit.start;
  if (edit.end) updated.end = *edit.end;
  check_times(updated.start, updated.end);
  tv.das[*index] = std::move(updated);
  touch();
}

DaId Meeting::insert_da(std::string_view tver, std::size_t position, NewDa fields) {
  auto& tv = transcript_mut(tver);
  if (position > tv.das.size()) {
    fail(Errc::kIndexOutOfRange, "position " + std::to_string(position) +
                                     " exceeds transcript length " +
                                     std::to_string(tv.das.size()));
  }
  check_speaker(fields.speaker);
  check_times(fields.start, fields.end);
  DialogueAct da{DaId{tv.next_id++}, std::move(fields.speaker),
                 std::move(fields.text), fields.start, fields.end};
  tv.das.insert(tv.das.begin() + static_cast<std::ptrdiff_t>(position), da);
  touch();
  return da.id;
}

void Meeting::delete_da(std::string_view tver, DaId da) {
  auto& tv = transcript_mut(tver);
  auto index = tv.index_of(da);
  if (!index) fail(Errc::kUnknownDa, "unknown dialogue act " + to_string(da));
  tv.das.erase(tv.das.begin() + static_cast<std::ptrdiff_t>(*index));
  for (auto& [key, alignment] : alignments_) {
    if (key.transcript == tver) alignment.targets.erase(da);
  }
  touch();
}

PointId Meeting::add_summary_point(std::string_view sver, std::size_t position,
                                   std::string text, std::size_t indent) {
  auto& sv = summary_mut(sver);
  if (position > sv.points.size()) {
    fail(Errc::kIndexOutOfRange, "position " + std::to_string(position) +
                                     " exceeds summary length " +
                                     std::to_string(sv.points.size()));
  }
  SummaryPoint point{PointId{sv.next_id++}, std::move(text), indent};
  sv.points.insert(sv.points.begin() + static_cast<std::ptrdiff_t>(position), point);
  touch();
  return point.id;
}

void Meeting::edit_summary_point(std::string_view sver, PointId point,
                                 std::optional<std::string> text,
                                 std::optional<std::size_t> indent) {
  auto& sv = summary_mut(sver);
  auto index = sv.index_of(point);
  if (!index) fail(Errc::kUnknownPoint, "unknown summary point " + to_string(point));
  if (text) sv.points[*index].text = std::move(*text);
  if (indent) sv.points[*index].indent = *indent;
  touch();
}

void Meeting::delete_summary_point(std::string_view sver, PointId point) {
  auto& sv = summary_mut(sver);
  auto index = sv.index_of(point);
  if (!index) fail(Errc::kUnknownPoint, "unknown summary point " + to_string(point));
  sv.points.erase(sv.points.begin() + static_cast<std::ptrdiff_t>(*index));
  const AlignmentTarget gone{point};
  for (auto& [key, alignment] : alignments_) {
    if (key.summary != sver) continue;
    std::erase_if(alignment.targets,
                  [&](const auto& entry) { return entry.second == gone; });
  }
  for (auto& [key, record] : evaluations_) {
    if (key.summary == sver) record.per_point.erase(point);
  }
  touch();
}

void Meeting::align(const AlignmentKey& key, std::span<const DaId> das,
                    AlignmentTarget target) {
  check_key(key);
  const auto& tv = transcript(key.transcript);
  for (DaId da : das) {
    if (!tv.find(da)) fail(Errc::kUnknownDa, "unknown dialogue act " + to_string(da));
  }
  if (const auto* point = std::get_if<PointId>(&target)) {
    if (!summary(key.summary).find(*point)) {
      fail(Errc::kUnknownPoint, "unknown summary point " + to_string(*point));
    }
  }
  auto& alignment = ensure_alignment(key);
  for (DaId da : das) alignment.targets.insert_or_assign(da, target);
  touch();
}

void Meeting::unalign(const AlignmentKey& key, std::span<const DaId> das) {
  check_key(key);
  const auto& tv = transcript(key.transcript);
  for (DaId da : das) {
    if (!tv.find(da)) fail(Errc::kUnknownDa, "unknown dialogue act " + to_string(da));
  }
  auto& alignment = ensure_alignment(key);
  for (DaId da : das) alignment.targets.erase(da);
  touch();
}

void Meeting::unalign_point(const AlignmentKey& key, PointId point) {
  check_key(key);
  if (!summary(key.summary).find(point)) {
    fail(Errc::kUnknownPoint, "unknown summary point " + to_string(point));
  }
  auto& alignment = ensure_alignment(key);
  const AlignmentTarget gone{point};
  std::erase_if(alignment.targets,
                [&](const auto& entry) { return entry.second == gone; });
  touch();
}

std::vector<DaId> Meeting::hunk_of(const AlignmentKey& key, PointId point) const {
  check_key(key);
  if (!summary(key.summary).find(point)) {
    fail(Errc::kUnknownPoint, "unknown summary point " + to_string(point));
  }
  const auto* alignment = find_alignment(key);
  if (!alignment) return {};
  return minutes::hunk_of(*alignment, transcript(key.transcript), point);
}

EvaluationRecord& Meeting::ensure_evaluation(const EvaluationKey& key) {
  transcript(key.transcript);
  summary(key.summary);
  if (!is_valid_name(key.annotator)) {
    fail(Errc::kInvalidName, "invalid annotator name '" + key.annotator + "'");
  }
  auto [it, inserted] = evaluations_.try_emplace(key);
  if (inserted) it->second.key = key;
  return it->second;
}

const EvaluationRecord& Meeting::select_evaluation(const EvaluationKey& key) {
  if (const auto* existing = find_evaluation(key)) return *existing;
  auto& created = ensure_evaluation(key);
  touch();
  return created;
}

void Meeting::set_scores(const EvaluationKey& key, PointId point, PointScores scores) {
  transcript(key.transcript);
  if (!summary(key.summary).find(point)) {
    fail(Errc::kUnknownPoint, "unknown summary point " + to_string(point));
  }
  check_score(scores.adequacy);
  check_score(scores.grammaticality);
  check_score(scores.fluency);
  auto& record = ensure_evaluation(key);
  if (scores.empty()) {
    record.per_point.erase(point);
  } else {
    record.per_point.insert_or_assign(point, scores);
  }
  touch();
}

void Meeting::set_doc_adequacy(const EvaluationKey& key, std::optional<int> score) {
  check_score(score);
  auto& record = ensure_evaluation(key);
  record.doc_adequacy = score;
  touch();
}

}  // namespace minutes
