#include "minutes/store.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "minutes/error.hpp"

namespace fs = std::filesystem;

namespace minutes::store {
namespace {

constexpr std::string_view kMetaFile = "meeting.meta";
constexpr std::string_view kTranscriptDir = "transcripts/";
constexpr std::string_view kSummaryDir = "summaries/";
constexpr std::string_view kAlignmentDir = "alignments/";
constexpr std::string_view kEvaluationDir = "evaluations/";
constexpr std::string_view kBom = "\xEF\xBB\xBF";

struct Line {
  std::size_t number;
  std::string_view text;
};

// Lines terminated by LF; a trailing unterminated piece counts as a line.
std::vector<Line> split_lines(std::string_view content) {
  std::vector<Line> lines;
  std::size_t number = 1;
  while (!content.empty()) {
    auto nl = content.find('\n');
    if (nl == std::string_view::npos) {
      lines.push_back({number, content});
      break;
    }
    lines.push_back({number++, content.substr(0, nl)});
    content.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  for (;;) {
    auto tab = line.find('\t');
    fields.push_back(line.substr(0, tab));
    if (tab == std::string_view::npos) break;
    line.remove_prefix(tab + 1);
  }
  return fields;
}

std::vector<std::string> split_name(std::string_view stem) {
  std::vector<std::string> parts;
  for (;;) {
    auto sep = stem.find("__");
    parts.emplace_back(stem.substr(0, sep));
    if (sep == std::string_view::npos) break;
    stem.remove_prefix(sep + 2);
  }
  return parts;
}

std::optional<std::size_t> parse_index(std::string_view s) {
  if (s.empty() || (s.size() > 1 && s.front() == '0')) return std::nullopt;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Decimal seconds with at most three fractional digits.
std::optional<Millis> parse_seconds(std::string_view s) {
  auto dot = s.find('.');
  auto whole_part = s.substr(0, dot);
  if (whole_part.empty() ||
      !std::all_of(whole_part.begin(), whole_part.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  Millis whole = 0;
  auto [ptr, ec] = std::from_chars(whole_part.data(),
                                   whole_part.data() + whole_part.size(), whole);
  if (ec != std::errc{} || whole > 9'000'000'000'000LL) return std::nullopt;
  Millis frac = 0;
  if (dot != std::string_view::npos) {
    auto frac_part = s.substr(dot + 1);
    if (frac_part.empty() || frac_part.size() > 3) return std::nullopt;
    for (std::size_t i = 0; i < 3; ++i) {
      char c = i < frac_part.size() ? frac_part[i] : '0';
      if (c < '0' || c > '9') return std::nullopt;
      frac = frac * 10 + (c - '0');
    }
  }
  return whole * 1000 + frac;
}

std::string format_seconds(Millis ms) {
  std::string out = std::to_string(ms / 1000);
  Millis frac = ms % 1000;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, 3 - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out += '.';
    out += digits;
  }
  return out;
}

std::string format_time(const std::optional<Millis>& t) {
  return t ? format_seconds(*t) : std::string();
}

std::string target_field(const AlignmentTarget& target,
                         const std::map<PointId, std::size_t>& point_index) {
  if (const auto* point = std::get_if<PointId>(&target)) {
    return "P" + std::to_string(point_index.at(*point));
  }
  return "M:" + std::string(meta_label_name(std::get<MetaLabel>(target)));
}

std::string score_field(const std::optional<int>& score) {
  return score ? std::to_string(*score) : std::string();
}

std::string annotator_suffix(const std::string& annotator) {
  return annotator.empty() ? std::string() : "__" + annotator;
}

Errc errc_for(const std::string& code) {
  if (code == "MissingFile") return Errc::kMissingFile;
  if (code == "DanglingReference") return Errc::kDanglingReference;
  if (code == "EmptyDaText") return Errc::kEmptyDaText;
  if (code == "IoFailure") return Errc::kIoFailure;
  return Errc::kParseError;
}

// Parses a file tree into a meeting while collecting diagnostics. Rows with
// errors are skipped.
class TreeParser {
 public:
  explicit TreeParser(const FileTree& tree) : tree_(tree) {}

  std::optional<Meeting> run() {
    auto meta = tree_.find(std::string(kMetaFile));
    if (meta == tree_.end()) {
      error("MissingFile", std::string(kMetaFile), 0, "meeting.meta is missing");
      return std::nullopt;
    }
    parse_meta(meta->second);
    if (!meeting_) return std::nullopt;

    for (const auto& [path, content] : tree_) {
      if (path == kMetaFile) continue;
      classify(path);
    }
    for (const auto& [name, path] : transcript_files_) parse_transcript(name, path);
    for (const auto& [name, path] : summary_files_) parse_summary(name, path);
    for (const auto& [sver, symbol] : indent_overrides_) {
      if (!summary_files_.contains(sver)) {
        warning("UnknownKey", std::string(kMetaFile), 0,
                "indent_symbol." + sver + " names no summary version");
      }
    }
    for (const auto& path : alignment_files_) parse_alignment(path);
    for (const auto& path : evaluation_files_) parse_evaluation(path);
    meeting_->set_revision(0);
    return std::move(meeting_);
  }

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  void report(Severity severity, std::string code, std::string file,
              std::size_t line, std::string message, std::size_t column = 0) {
    diagnostics_.push_back({severity, std::move(code), std::move(file), line,
                            column, std::move(message)});
  }
  void error(std::string code, std::string file, std::size_t line,
             std::string message, std::size_t column = 0) {
    report(Severity::kError, std::move(code), std::move(file), line,
           std::move(message), column);
  }
  void warning(std::string code, std::string file, std::size_t line,
               std::string message) {
    report(Severity::kWarning, std::move(code), std::move(file), line,
           std::move(message));
  }

  bool check_encoding(const std::string& file, std::string_view content) {
    if (content.starts_with(kBom)) {
      error("ParseError", file, 1, "byte order mark is not allowed", 1);
      return false;
    }
    return true;
  }

  std::optional<std::string> field(const std::string& file, std::size_t line,
                                   std::string_view raw, std::size_t column) {
    try {
      return unescape(raw);
    } catch (const Error& e) {
      error("ParseError", file, line, e.what(), column);
      return std::nullopt;
    }
  }

  void parse_meta(const std::string& content) {
    const std::string file(kMetaFile);
    if (!check_encoding(file, content)) return;
    std::map<std::string, std::string> values;
    for (const auto& [number, text] : split_lines(content)) {
      if (text.empty()) continue;
      auto eq = text.find('=');
      if (eq == std::string_view::npos) {
        error("ParseError", file, number, "expected key=value");
        continue;
      }
      std::string key(text.substr(0, eq));
      auto value = field(file, number, text.substr(eq + 1), eq + 2);
      if (!value) continue;
      if (values.contains(key)) {
        error("ParseError", file, number, "duplicate key '" + key + "'");
        continue;
      }
      if (key != "id" && key != "media" && key != "indent_symbol" &&
          !key.starts_with("indent_symbol.")) {
        warning("UnknownKey", file, number, "unknown key '" + key + "'");
        continue;
      }
      if (key.starts_with("indent_symbol") && !is_valid_indent_symbol(*value)) {
        error("ParseError", file, number,
              "invalid indentation symbol '" + *value + "'");
        continue;
      }
      values.emplace(std::move(key), std::move(*value));
    }
    auto id = values.find("id");
    if (id == values.end()) {
      error("ParseError", file, 0, "missing required key 'id'");
      return;
    }
    if (!is_valid_name(id->second)) {
      error("InvalidName", file, 0, "invalid meeting id '" + id->second + "'");
      return;
    }
    meeting_.emplace(id->second);
    if (auto media = values.find("media");
        media != values.end() && !media->second.empty()) {
      meeting_->set_media(media->second);
    }
    if (auto symbol = values.find("indent_symbol"); symbol != values.end()) {
      meeting_->set_default_indent_symbol(symbol->second);
    }
    for (const auto& [key, value] : values) {
      if (key.starts_with("indent_symbol.")) {
        indent_overrides_.emplace(key.substr(14), value);
      }
    }
  }

  void classify(const std::string& path) {
    auto take = [&](std::string_view dir, std::string_view ext,
                    std::string& stem) {
      if (!path.starts_with(dir) || !path.ends_with(ext)) return false;
      stem = path.substr(dir.size(), path.size() - dir.size() - ext.size());
      return stem.find('/') == std::string::npos;
    };
    std::string stem;
    if (take(kTranscriptDir, ".tsv", stem)) {
      if (!is_valid_name(stem)) {
        error("InvalidName", path, 0, "invalid transcript version name '" + stem + "'");
      } else {
        transcript_files_.emplace(stem, path);
      }
    } else if (take(kSummaryDir, ".txt", stem)) {
      if (!is_valid_name(stem)) {
        error("InvalidName", path, 0, "invalid summary version name '" + stem + "'");
      } else {
        summary_files_.emplace(stem, path);
      }
    } else if (take(kAlignmentDir, ".tsv", stem)) {
      alignment_files_.push_back(path);
    } else if (take(kEvaluationDir, ".tsv", stem)) {
      evaluation_files_.push_back(path);
    } else {
      warning("UnexpectedFile", path, 0, "file is not part of the corpus layout");
    }
  }

  void parse_transcript(const std::string& name, const std::string& path) {
    meeting_->add_transcript_version(name);
    const std::string& content = tree_.at(path);
    if (!check_encoding(path, content)) return;
    std::optional<Millis> previous_start;
    std::size_t position = 0;
    for (const auto& [number, text] : split_lines(content)) {
      auto fields = split_fields(text);
      if (fields.size() != 4) {
        error("ParseError", path, number,
              "expected 4 tab-separated fields (speaker, start, end, text), got " +
                  std::to_string(fields.size()));
        continue;
      }
      auto speaker = field(path, number, fields[0], 1);
      auto body = field(path, number, fields[3],
                        fields[0].size() + fields[1].size() + fields[2].size() + 4);
      if (!speaker || !body) continue;
      if (speaker->empty() || speaker->find_first_of("\r\n") != std::string::npos) {
        error("ParseError", path, number, "speaker must be a non-empty single line", 1);
        continue;
      }
      std::optional<Millis> times[2];
      bool ok = true;
      std::size_t column = fields[0].size() + 2;
      for (int k = 0; k < 2; ++k) {
        auto raw = fields[1 + k];
        if (!raw.empty()) {
          times[k] = parse_seconds(raw);
          if (!times[k]) {
            error("ParseError", path, number,
                  "time '" + std::string(raw) +
                      "' is not decimal seconds with at most 3 fractional digits",
                  column);
            ok = false;
          }
        }
        column += raw.size() + 1;
      }
      if (!ok) continue;
      if (times[0] && times[1] && *times[0] > *times[1]) {
        error("InvalidTimes", path, number, "start time is after end time");
        continue;
      }
      if (body->empty()) {
        error("EmptyDaText", path, number,
              "dialogue act " + std::to_string(position) + " has empty text");
      }
      if (times[0]) {
        if (previous_start && *times[0] < *previous_start) {
          warning("NonMonotonicTimestamps", path, number,
                  "start " + format_seconds(*times[0]) +
                      " is earlier than the previous start " +
                      format_seconds(*previous_start));
        }
        previous_start = times[0];
      }
      meeting_->insert_da(name, position++,
                          NewDa{std::move(*speaker), std::move(*body), times[0], times[1]});
    }
  }

  void parse_summary(const std::string& name, const std::string& path) {
    auto override_it = indent_overrides_.find(name);
    std::optional<std::string> symbol;
    if (override_it != indent_overrides_.end()) symbol = override_it->second;
    meeting_->add_summary_version(name, symbol);
    const std::string indent = meeting_->summary(name).indent_symbol;
    const std::string marker = "\\" + indent;

    const std::string& content = tree_.at(path);
    if (!check_encoding(path, content)) return;
    std::size_t position = 0;
    for (auto [number, text] : split_lines(content)) {
      std::size_t depth = 0;
      while (text.starts_with(indent)) {
        text.remove_prefix(indent.size());
        ++depth;
      }
      std::size_t column = depth * indent.size() + 1;
      if (text.starts_with(marker)) {
        text.remove_prefix(1);
        ++column;
      }
      auto body = field(path, number, text, column);
      if (!body) continue;
      meeting_->add_summary_point(name, position++, std::move(*body), depth);
    }
  }

  struct PairRef {
    const TranscriptVersion* transcript = nullptr;
    const SummaryVersion* summary = nullptr;
    std::string annotator;
  };

  std::optional<PairRef> resolve_pair(const std::string& path,
                                      std::string_view dir, bool need_annotator) {
    std::string stem = path.substr(dir.size(), path.size() - dir.size() - 4);
    auto parts = split_name(stem);
    const bool shape_ok =
        need_annotator ? parts.size() == 3 : (parts.size() == 2 || parts.size() == 3);
    if (!shape_ok || !std::all_of(parts.begin(), parts.end(), is_valid_name)) {
      error("InvalidName", path, 0,
            need_annotator ? "expected <transcript>__<summary>__<annotator>.tsv"
                           : "expected <transcript>__<summary>[__<annotator>].tsv");
      return std::nullopt;
    }
    PairRef ref;
    auto t = meeting_->transcripts().find(parts[0]);
    auto s = meeting_->summaries().find(parts[1]);
    if (t == meeting_->transcripts().end()) {
      error("DanglingReference", path, 0,
            "transcript version '" + parts[0] + "' does not exist");
      return std::nullopt;
    }
    if (s == meeting_->summaries().end()) {
      error("DanglingReference", path, 0,
            "summary version '" + parts[1] + "' does not exist");
      return std::nullopt;
    }
    ref.transcript = &t->second;
    ref.summary = &s->second;
    if (parts.size() == 3) ref.annotator = parts[2];
    return ref;
  }

  void parse_alignment(const std::string& path) {
    auto ref = resolve_pair(path, kAlignmentDir, false);
    if (!ref) return;
    const std::string& content = tree_.at(path);
    if (!check_encoding(path, content)) return;
    const AlignmentKey key{ref->transcript->name, ref->summary->name, ref->annotator};
    std::map<std::size_t, AlignmentTarget> rows;
    for (const auto& [number, text] : split_lines(content)) {
      auto fields = split_fields(text);
      if (fields.size() != 2) {
        error("ParseError", path, number,
              "expected 2 tab-separated fields (da_index, target), got " +
                  std::to_string(fields.size()));
        continue;
      }
      auto index = parse_index(fields[0]);
      if (!index) {
        error("ParseError", path, number,
              "DA index '" + std::string(fields[0]) + "' is not a non-negative integer", 1);
        continue;
      }
      if (*index >= ref->transcript->das.size()) {
        error("DanglingReference", path, number,
              "DA index " + std::to_string(*index) + " is out of range for transcript '" +
                  key.transcript + "' with " +
                  std::to_string(ref->transcript->das.size()) + " dialogue acts",
              1);
        continue;
      }
      std::optional<AlignmentTarget> target;
      const std::size_t column = fields[0].size() + 2;
      if (fields[1].starts_with("P")) {
        auto point = parse_index(fields[1].substr(1));
        if (!point) {
          error("ParseError", path, number,
                "malformed point target '" + std::string(fields[1]) + "'", column);
          continue;
        }
        if (*point >= ref->summary->points.size()) {
          error("DanglingReference", path, number,
                "point index " + std::to_string(*point) + " is out of range for summary '" +
                    key.summary + "' with " +
                    std::to_string(ref->summary->points.size()) + " points",
                column);
          continue;
        }
        target = ref->summary->points[*point].id;
      } else if (fields[1].starts_with("M:")) {
        auto label = parse_meta_label(fields[1].substr(2));
        if (!label) {
          error("ParseError", path, number,
                "unknown meta-label '" + std::string(fields[1].substr(2)) +
                    "' (expected small_talk or organizational)",
                column);
          continue;
        }
        target = *label;
      } else {
        error("ParseError", path, number,
              "target must be P<point_index> or M:<label>", column);
        continue;
      }
      if (rows.contains(*index)) {
        error("DuplicateAlignment", path, number,
              "DA index " + std::to_string(*index) +
                  " is aligned more than once (alignments are n-to-1)",
              1);
        continue;
      }
      rows.emplace(*index, *target);
    }
    std::map<AlignmentTarget, std::vector<DaId>> by_target;
    for (const auto& [index, target] : rows) {
      by_target[target].push_back(ref->transcript->das[index].id);
    }
    meeting_->select_pair(key);
    for (const auto& [target, das] : by_target) meeting_->align(key, das, target);
  }

  void parse_evaluation(const std::string& path) {
    auto ref = resolve_pair(path, kEvaluationDir, true);
    if (!ref) return;
    const std::string& content = tree_.at(path);
    if (!check_encoding(path, content)) return;
    const EvaluationKey key{ref->transcript->name, ref->summary->name, ref->annotator};
    meeting_->select_evaluation(key);
    std::set<std::size_t> seen;
    bool seen_doc = false;

    auto score = [&](std::string_view raw, std::size_t number, std::size_t column,
                     bool& ok) -> std::optional<int> {
      if (raw.empty()) return std::nullopt;
      int value = 0;
      auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
      if (ec != std::errc{} || ptr != raw.data() + raw.size()) {
        error("ParseError", path, number,
              "score '" + std::string(raw) + "' is not an integer in the range 1..5",
              column);
        ok = false;
        return std::nullopt;
      }
      if (!is_valid_score(value)) {
        error("ScoreOutOfRange", path, number,
              "score " + std::string(raw) + " is outside the range 1..5", column);
        ok = false;
        return std::nullopt;
      }
      return value;
    };

    for (const auto& [number, text] : split_lines(content)) {
      auto fields = split_fields(text);
      if (fields[0] == "DOC") {
        if (fields.size() != 2) {
          error("ParseError", path, number, "expected DOC<TAB>adequacy");
          continue;
        }
        if (seen_doc) {
          error("ParseError", path, number, "duplicate DOC row");
          continue;
        }
        seen_doc = true;
        bool ok = true;
        auto value = score(fields[1], number, 5, ok);
        if (ok) meeting_->set_doc_adequacy(key, value);
        continue;
      }
      if (fields.size() != 4) {
        error("ParseError", path, number,
              "expected 4 tab-separated fields (point_index, adequacy, "
              "grammaticality, fluency), got " +
                  std::to_string(fields.size()));
        continue;
      }
      auto index = parse_index(fields[0]);
      if (!index) {
        error("ParseError", path, number,
              "point index '" + std::string(fields[0]) + "' is not a non-negative integer",
              1);
        continue;
      }
      if (*index >= ref->summary->points.size()) {
        error("DanglingReference", path, number,
              "point index " + std::to_string(*index) + " is out of range for summary '" +
                  key.summary + "' with " +
                  std::to_string(ref->summary->points.size()) + " points",
              1);
        continue;
      }
      if (!seen.insert(*index).second) {
        error("ParseError", path, number,
              "point index " + std::to_string(*index) + " is scored more than once", 1);
        continue;
      }
      bool ok = true;
      std::size_t column = fields[0].size() + 2;
      PointScores scores;
      scores.adequacy = score(fields[1], number, column, ok);
      column += fields[1].size() + 1;
      scores.grammaticality = score(fields[2], number, column, ok);
      column += fields[2].size() + 1;
      scores.fluency = score(fields[3], number, column, ok);
      if (!ok || scores.empty()) continue;
      meeting_->set_scores(key, ref->summary->points[*index].id, scores);
    }
  }

  const FileTree& tree_;
  std::optional<Meeting> meeting_;
  std::vector<Diagnostic> diagnostics_;
  std::map<std::string, std::string> indent_overrides_;
  std::map<std::string, std::string> transcript_files_;
  std::map<std::string, std::string> summary_files_;
  std::vector<std::string> alignment_files_;
  std::vector<std::string> evaluation_files_;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kIoFailure, "cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw Error(Errc::kIoFailure, "failed writing " + path.string());
}

}  // namespace

FileTree render_meeting(const Meeting& meeting) {
  FileTree tree;

  std::string meta = "id=" + escape(meeting.id()) + "\n";
  meta += "media=" + escape(meeting.media().value_or("")) + "\n";
  meta += "indent_symbol=" + escape(meeting.default_indent_symbol()) + "\n";
  for (const auto& [name, summary] : meeting.summaries()) {
    if (summary.indent_symbol != meeting.default_indent_symbol()) {
      meta += "indent_symbol." + name + "=" + escape(summary.indent_symbol) + "\n";
    }
  }
  tree.emplace(kMetaFile, std::move(meta));

  std::map<std::string, std::map<DaId, std::size_t>, std::less<>> da_index;
  for (const auto& [name, transcript] : meeting.transcripts()) {
    std::string out;
    auto& index = da_index[name];
    for (std::size_t i = 0; i < transcript.das.size(); ++i) {
      const auto& da = transcript.das[i];
      if (da.text.empty()) {
        throw Error(Errc::kEmptyDaText, "transcript '" + name + "', dialogue act " +
                                            std::to_string(i) + " (" + to_string(da.id) +
                                            ") has empty text");
      }
      out += escape(da.speaker) + '\t' + format_time(da.start) + '\t' +
             format_time(da.end) + '\t' + escape(da.text) + '\n';
      index.emplace(da.id, i);
    }
    tree.emplace(std::string(kTranscriptDir) + name + ".tsv", std::move(out));
  }

  std::map<std::string, std::map<PointId, std::size_t>, std::less<>> point_index;
  for (const auto& [name, summary] : meeting.summaries()) {
    std::string out;
    auto& index = point_index[name];
    for (std::size_t i = 0; i < summary.points.size(); ++i) {
      const auto& point = summary.points[i];
      for (std::size_t d = 0; d < point.indent; ++d) out += summary.indent_symbol;
      std::string body = escape(point.text);
      if (body.starts_with(summary.indent_symbol)) out += '\\';
      out += body;
      out += '\n';
      index.emplace(point.id, i);
    }
    tree.emplace(std::string(kSummaryDir) + name + ".txt", std::move(out));
  }

  for (const auto& [key, alignment] : meeting.alignments()) {
    std::string out;
    const auto& transcript = meeting.transcript(key.transcript);
    const auto& points = point_index.at(key.summary);
    for (std::size_t i = 0; i < transcript.das.size(); ++i) {
      auto target = alignment.target_of(transcript.das[i].id);
      if (target) out += std::to_string(i) + '\t' + target_field(*target, points) + '\n';
    }
    tree.emplace(std::string(kAlignmentDir) + key.transcript + "__" + key.summary +
                     annotator_suffix(key.annotator) + ".tsv",
                 std::move(out));
  }

  for (const auto& [key, record] : meeting.evaluations()) {
    const auto& points = point_index.at(key.summary);
    std::vector<std::pair<std::size_t, const PointScores*>> rows;
    for (const auto& [point, scores] : record.per_point) {
      if (!scores.empty()) rows.emplace_back(points.at(point), &scores);
    }
    std::sort(rows.begin(), rows.end());
    std::string out;
    for (const auto& [index, scores] : rows) {
      out += std::to_string(index) + '\t' + score_field(scores->adequacy) + '\t' +
             score_field(scores->grammaticality) + '\t' + score_field(scores->fluency) +
             '\n';
    }
    if (record.doc_adequacy) out += "DOC\t" + std::to_string(*record.doc_adequacy) + '\n';
    tree.emplace(std::string(kEvaluationDir) + key.transcript + "__" + key.summary + "__" +
                     key.annotator + ".tsv",
                 std::move(out));
  }
  return tree;
}

Meeting parse_meeting(const FileTree& tree) {
  TreeParser parser(tree);
  auto meeting = parser.run();
  for (const auto& d : parser.diagnostics()) {
    if (d.severity == Severity::kError) {
      throw Error(errc_for(d.code), format_diagnostic(d));
    }
  }
  return std::move(*meeting);
}

std::vector<Diagnostic> validate_tree(const FileTree& tree) {
  TreeParser parser(tree);
  try {
    parser.run();
  } catch (const Error& e) {
    auto diagnostics = parser.diagnostics();
    diagnostics.push_back({Severity::kError, std::string(errc_name(e.code())), "", 0,
                           0, e.what()});
    return diagnostics;
  }
  return parser.diagnostics();
}

FileTree read_tree(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw Error(Errc::kMissingFile, root.string() + " is not a directory");
  }
  FileTree tree;
  auto read = [&](const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::kIoFailure, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    tree.emplace(fs::relative(path, root).generic_string(), buf.str());
  };
  try {
    if (fs::is_regular_file(root / kMetaFile)) read(root / kMetaFile);
    for (std::string_view dir : {kTranscriptDir, kSummaryDir, kAlignmentDir, kEvaluationDir}) {
      const fs::path directory = root / dir;
      if (!fs::is_directory(directory)) continue;
      for (const auto& entry : fs::recursive_directory_iterator(directory)) {
        if (entry.is_regular_file()) read(entry.path());
      }
    }
  } catch (const fs::filesystem_error& e) {
    throw Error(Errc::kIoFailure, e.what());
  }
  return tree;
}

void save_meeting(const Meeting& meeting, const fs::path& root) {
  const FileTree tree = render_meeting(meeting);
  const fs::path staging =
      root.parent_path() / ("." + root.filename().string() + ".saving");
  try {
    fs::create_directories(root);
    fs::remove_all(staging);
    for (const auto& [relative, content] : tree) {
      const fs::path target = staging / relative;
      fs::create_directories(target.parent_path());
      write_file(target, content);
    }
    for (const auto& [relative, content] : tree) {
      const fs::path target = root / relative;
      fs::create_directories(target.parent_path());
      fs::rename(staging / relative, target);
    }
    for (std::string_view dir : {kTranscriptDir, kSummaryDir, kAlignmentDir, kEvaluationDir}) {
      const fs::path directory = root / dir;
      if (!fs::is_directory(directory)) continue;
      for (const auto& entry : fs::directory_iterator(directory)) {
        const auto relative = fs::relative(entry.path(), root).generic_string();
        if (entry.is_regular_file() && !tree.contains(relative)) fs::remove(entry.path());
      }
    }
    fs::remove_all(staging);
  } catch (const fs::filesystem_error& e) {
    std::error_code ignored;
    fs::remove_all(staging, ignored);
    throw Error(Errc::kIoFailure, e.what());
  } catch (const Error&) {
    std::error_code ignored;
    fs::remove_all(staging, ignored);
    throw;
  }
}

Meeting load_meeting(const fs::path& root) {
  if (!fs::exists(root)) throw Error(Errc::kMissingFile, root.string() + " does not exist");
  return parse_meeting(read_tree(root));
}

std::string_view severity_name(Severity severity) noexcept {
  return severity == Severity::kError ? "error" : "warning";
}

std::vector<Diagnostic> validate(const fs::path& root) {
  try {
    return validate_tree(read_tree(root));
  } catch (const Error& e) {
    return {{Severity::kError, std::string(errc_name(e.code())), "", 0, 0, e.what()}};
  }
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string out(severity_name(d.severity));
  out += ' ';
  if (!d.file.empty()) {
    out += d.file;
    if (d.line > 0) {
      out += ':' + std::to_string(d.line);
      if (d.column > 0) out += ':' + std::to_string(d.column);
    }
    out += ": ";
  }
  out += d.code + ": " + d.message;
  return out;
}

void create_meeting(const fs::path& corpus, const std::string& id,
                    const std::string& transcript, const std::string& summary) {
  Meeting meeting(id);
  meeting.add_transcript_version(transcript);
  meeting.add_summary_version(summary);
  const fs::path root = corpus / id;
  std::error_code ec;
  if (fs::exists(root, ec)) {
    throw Error(Errc::kAlreadyExists, "meeting directory " + root.string() + " already exists");
  }
  save_meeting(meeting, root);
}

bool is_meeting_dir(const fs::path& dir) {
  std::error_code ec;
  return fs::is_regular_file(dir / kMetaFile, ec);
}

std::vector<fs::path> list_meetings(const fs::path& corpus) {
  std::vector<fs::path> found;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(corpus, ec)) {
    if (entry.path().filename().string().starts_with('.')) continue;
    if (entry.is_directory() && is_meeting_dir(entry.path())) found.push_back(entry.path());
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace minutes::store
