#ifndef MINUTES_MEETING_HPP_
#define MINUTES_MEETING_HPP_

#include <compare>
#include <functional>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "minutes/error.hpp"

namespace minutes {

// Stable opaque identifiers. Display positions are derived from the order of
// the owning version; ids are never reused within a version.
struct DaId {
  std::uint64_t value = 0;
  auto operator<=>(const DaId&) const = default;
};

struct PointId {
  std::uint64_t value = 0;
  auto operator<=>(const PointId&) const = default;
};

// "d12" / "p3"; the parse functions return nullopt on anything else.
std::string to_string(DaId id);
std::string to_string(PointId id);
std::optional<DaId> parse_da_id(std::string_view s);
std::optional<PointId> parse_point_id(std::string_view s);

// Timestamps in whole milliseconds.
using Millis = std::int64_t;
Millis millis_from_seconds(double seconds);
double seconds_from_millis(Millis ms);

struct DialogueAct {
  DaId id;
  std::string speaker;
  std::string text;
  std::optional<Millis> start;
  std::optional<Millis> end;
};

struct TranscriptVersion {
  std::string name;
  std::vector<DialogueAct> das;
  std::uint64_t next_id = 0;

  std::optional<std::size_t> index_of(DaId id) const;
  const DialogueAct* find(DaId id) const;
};

struct SummaryPoint {
  PointId id;
  std::string text;
  std::size_t indent = 0;
};

struct SummaryVersion {
  std::string name;
  std::vector<SummaryPoint> points;
  std::string indent_symbol = "-";
  std::uint64_t next_id = 0;

  std::optional<std::size_t> index_of(PointId id) const;
  const SummaryPoint* find(PointId id) const;
};

enum class MetaLabel { kSmallTalk, kOrganizational };

std::string_view meta_label_name(MetaLabel label) noexcept;  // "small_talk"
std::optional<MetaLabel> parse_meta_label(std::string_view s);

// A DA points at exactly one of: a summary point, or a meta-label.
using AlignmentTarget = std::variant<PointId, MetaLabel>;

// Alignments are keyed by the version pair. An empty annotator is the shared
// alignment of the pair; each named annotator has an independent one.
struct AlignmentKey {
  std::string transcript;
  std::string summary;
  std::string annotator;
  auto operator<=>(const AlignmentKey&) const = default;
};

struct Alignment {
  AlignmentKey key;
  std::map<DaId, AlignmentTarget> targets;

  std::optional<AlignmentTarget> target_of(DaId da) const;
};

// All DAs aligned to `point`, in transcript order.
std::vector<DaId> hunk_of(const Alignment& alignment,
                          const TranscriptVersion& transcript, PointId point);

struct PointScores {
  std::optional<int> adequacy;
  std::optional<int> grammaticality;
  std::optional<int> fluency;

  bool complete() const { return adequacy && grammaticality && fluency; }
  bool empty() const { return !adequacy && !grammaticality && !fluency; }
  bool operator==(const PointScores&) const = default;
};

struct EvaluationKey {
  std::string transcript;
  std::string summary;
  std::string annotator;
  auto operator<=>(const EvaluationKey&) const = default;
};

struct EvaluationRecord {
  EvaluationKey key;
  std::map<PointId, PointScores> per_point;
  std::optional<int> doc_adequacy;
};

// Version names and annotator names end up in file names.
bool is_valid_name(std::string_view name) noexcept;
bool is_valid_indent_symbol(std::string_view symbol) noexcept;
bool is_valid_score(int score) noexcept;

struct NewDa {
  std::string speaker;
  std::string text;
  std::optional<Millis> start;
  std::optional<Millis> end;
};

// Each engaged field replaces the current value; for times, an engaged
// nullopt clears the timestamp.
struct DaEdit {
  std::optional<std::string> speaker;
  std::optional<std::string> text;
  std::optional<std::optional<Millis>> start;
  std::optional<std::optional<Millis>> end;
};

// Root aggregate. Every mutating member either succeeds and bumps the
// revision by one, or throws minutes::Error and leaves the meeting untouched.
class Meeting {
 public:
  explicit Meeting(std::string id);

  const std::string& id() const noexcept { return id_; }
  std::uint64_t revision() const noexcept { return revision_; }
  const std::optional<std::string>& media() const noexcept { return media_; }
  const std::string& default_indent_symbol() const noexcept {
    return default_indent_symbol_;
  }

  const std::map<std::string, TranscriptVersion, std::less<>>& transcripts() const {
    return transcripts_;
  }
  const std::map<std::string, SummaryVersion, std::less<>>& summaries() const {
    return summaries_;
  }
  const std::map<AlignmentKey, Alignment>& alignments() const {
    return alignments_;
  }
  const std::map<EvaluationKey, EvaluationRecord>& evaluations() const {
    return evaluations_;
  }

  // Throw kUnknownVersion.
  const TranscriptVersion& transcript(std::string_view name) const;
  const SummaryVersion& summary(std::string_view name) const;

  const Alignment* find_alignment(const AlignmentKey& key) const;
  const EvaluationRecord* find_evaluation(const EvaluationKey& key) const;

  // Overwrites the revision counter; used by batch appliers that count a
  // whole request as one mutation, and by loaders.
  void set_revision(std::uint64_t revision) noexcept { revision_ = revision; }

  void set_media(std::optional<std::string> media);
  void set_default_indent_symbol(std::string symbol);

  // Versions.
  void add_transcript_version(
      const std::string& name,
      const std::optional<std::string>& copy_from = std::nullopt);
  void add_summary_version(
      const std::string& name, std::optional<std::string> indent_symbol = {},
      const std::optional<std::string>& copy_from = std::nullopt);

  // Returns the alignment of the pair, creating an empty one when none
  // exists yet. Creation counts as a mutation; lookup does not.
  const Alignment& select_pair(const AlignmentKey& key);

  // Transcript editing.
  std::pair<DaId, DaId> split_da(std::string_view tver, DaId da,
                                 std::size_t offset);
  DaId merge_das(std::string_view tver, DaId first, DaId second);
  void edit_da(std::string_view tver, DaId da, const DaEdit& edit);
  DaId insert_da(std::string_view tver, std::size_t position, NewDa fields);
  void delete_da(std::string_view tver, DaId da);

  // Summary editing.
  PointId add_summary_point(std::string_view sver, std::size_t position,
                            std::string text, std::size_t indent);
  void edit_summary_point(std::string_view sver, PointId point,
                          std::optional<std::string> text,
                          std::optional<std::size_t> indent);
  void delete_summary_point(std::string_view sver, PointId point);

  // Alignment. align/unalign create the alignment of `key` if needed.
  void align(const AlignmentKey& key, std::span<const DaId> das,
             AlignmentTarget target);
  void unalign(const AlignmentKey& key, std::span<const DaId> das);
  void unalign_point(const AlignmentKey& key, PointId point);
  std::vector<DaId> hunk_of(const AlignmentKey& key, PointId point) const;

  // Evaluation. Setting all three scores empty removes the point's entry.
  void set_scores(const EvaluationKey& key, PointId point, PointScores scores);
  void set_doc_adequacy(const EvaluationKey& key, std::optional<int> score);
  const EvaluationRecord& select_evaluation(const EvaluationKey& key);

 private:
  TranscriptVersion& transcript_mut(std::string_view name);
  SummaryVersion& summary_mut(std::string_view name);
  void check_key(const AlignmentKey& key) const;
  Alignment& ensure_alignment(const AlignmentKey& key);
  EvaluationRecord& ensure_evaluation(const EvaluationKey& key);
  void touch() noexcept { ++revision_; }

  std::string id_;
  std::uint64_t revision_ = 0;
  std::optional<std::string> media_;
  std::string default_indent_symbol_ = "-";
  std::map<std::string, TranscriptVersion, std::less<>> transcripts_;
  std::map<std::string, SummaryVersion, std::less<>> summaries_;
  std::map<AlignmentKey, Alignment> alignments_;
  std::map<EvaluationKey, EvaluationRecord> evaluations_;
};

}  // namespace minutes

#endif  // MINUTES_MEETING_HPP_
