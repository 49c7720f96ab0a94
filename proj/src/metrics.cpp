#include "minutes/metrics.hpp"

#include <cstdio>
#include <set>

namespace minutes::metrics {
namespace {

void require_transcript(const Alignment& alignment,
                        const TranscriptVersion& transcript) {
  if (alignment.key.transcript != transcript.name) {
    throw Error(Errc::kVersionMismatch,
                "alignment is over transcript '" + alignment.key.transcript +
                    "', not '" + transcript.name + "'");
  }
  if (transcript.das.empty()) {
    throw Error(Errc::kEmptyTranscript,
                "transcript '" + transcript.name + "' has no dialogue acts");
  }
}

double ratio(std::size_t num, std::size_t den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

std::optional<double> mean(long sum, std::size_t n) {
  if (n == 0) return std::nullopt;
  return static_cast<double>(sum) / static_cast<double>(n);
}

}  // namespace

CoverageReport coverage(const Alignment& alignment,
                        const TranscriptVersion& transcript) {
  require_transcript(alignment, transcript);
  CoverageReport report;
  report.total_das = transcript.das.size();
  for (const auto& da : transcript.das) {
    auto target = alignment.target_of(da.id);
    if (!target) continue;
    if (std::holds_alternative<PointId>(*target)) {
      ++report.das_to_points;
    } else {
      ++report.das_to_meta;
    }
  }
  report.summary_coverage = ratio(report.das_to_points, report.total_das);
  report.annotated_coverage =
      ratio(report.das_to_points + report.das_to_meta, report.total_das);
  return report;
}

DocScores doc_aggregate(const EvaluationRecord& evaluation) {
  long adequacy = 0, grammaticality = 0, fluency = 0;
  std::size_t n_adequacy = 0, n_grammaticality = 0, n_fluency = 0;
  DocScores scores;
  for (const auto& [point, s] : evaluation.per_point) {
    if (s.empty()) continue;
    ++scores.n_scored_points;
    if (s.adequacy) adequacy += *s.adequacy, ++n_adequacy;
    if (s.grammaticality) grammaticality += *s.grammaticality, ++n_grammaticality;
    if (s.fluency) fluency += *s.fluency, ++n_fluency;
  }
  scores.avg_adequacy = mean(adequacy, n_adequacy);
  scores.avg_grammaticality = mean(grammaticality, n_grammaticality);
  scores.avg_fluency = mean(fluency, n_fluency);
  scores.doc_adequacy = evaluation.doc_adequacy;
  return scores;
}

Agreement iaa(std::span<const Alignment* const> alignments,
              const TranscriptVersion& transcript) {
  if (alignments.size() < 2) {
    throw Error(Errc::kTooFewAnnotators,
                "agreement needs at least two alignments, got " +
                    std::to_string(alignments.size()));
  }
  const auto& summary = alignments.front()->key.summary;
  for (const Alignment* a : alignments) {
    if (a->key.summary != summary) {
      throw Error(Errc::kVersionMismatch,
                  "alignments disagree on the summary version ('" + summary +
                      "' vs '" + a->key.summary + "')");
    }
    require_transcript(*a, transcript);
  }

  Agreement result;
  result.total_das = transcript.das.size();
  result.per_da.reserve(result.total_das);
  for (const auto& da : transcript.das) {
    std::optional<PointId> common;
    for (const Alignment* a : alignments) {
      auto target = a->target_of(da.id);
      const PointId* point = target ? std::get_if<PointId>(&*target) : nullptr;
      if (!point || (common && *common != *point)) {
        common.reset();
        break;
      }
      common = *point;
    }
    if (common) ++result.agreeing;
    result.per_da.push_back(common);
  }
  result.value = ratio(result.agreeing, result.total_das);
  return result;
}

double completeness(const EvaluationRecord& evaluation,
                    const Alignment& alignment) {
  if (evaluation.key.transcript != alignment.key.transcript ||
      evaluation.key.summary != alignment.key.summary) {
    throw Error(Errc::kVersionMismatch,
                "evaluation and alignment are over different version pairs");
  }
  std::set<PointId> with_hunk;
  for (const auto& [da, target] : alignment.targets) {
    if (const auto* point = std::get_if<PointId>(&target)) with_hunk.insert(*point);
  }
  if (with_hunk.empty()) return 1.0;
  std::size_t scored = 0;
  for (PointId point : with_hunk) {
    auto it = evaluation.per_point.find(point);
    if (it != evaluation.per_point.end() && it->second.complete()) ++scored;
  }
  return ratio(scored, with_hunk.size());
}

std::string format_fixed2(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

}  // namespace minutes::metrics
