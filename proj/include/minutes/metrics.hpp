#ifndef MINUTES_METRICS_HPP_
#define MINUTES_METRICS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minutes/meeting.hpp"

// Pure computations over alignments and evaluations. Ratios are plain
// count / count divisions in double precision; rounding happens only when
// formatting for humans.
namespace minutes::metrics {

struct CoverageReport {
  std::size_t total_das = 0;
  std::size_t das_to_points = 0;
  std::size_t das_to_meta = 0;
  double summary_coverage = 0.0;    // das_to_points / total_das
  double annotated_coverage = 0.0;  // (das_to_points + das_to_meta) / total_das
};

// Throws kEmptyTranscript, kVersionMismatch.
CoverageReport coverage(const Alignment& alignment,
                        const TranscriptVersion& transcript);

struct DocScores {
  std::optional<double> avg_adequacy;
  std::optional<double> avg_grammaticality;
  std::optional<double> avg_fluency;
  std::optional<int> doc_adequacy;  // elicited separately, never derived
  std::size_t n_scored_points = 0;
};

DocScores doc_aggregate(const EvaluationRecord& evaluation);

struct Agreement {
  std::size_t agreeing = 0;
  std::size_t total_das = 0;
  double value = 0.0;
  // Per DA in transcript order: the point every annotator chose, if any.
  std::vector<std::optional<PointId>> per_da;
};

// Strict agreement: a DA counts only if every alignment maps it to the same
// summary point. Unaligned or meta-labelled anywhere disqualifies it.
// Throws kTooFewAnnotators (< 2), kVersionMismatch, kEmptyTranscript.
Agreement iaa(std::span<const Alignment* const> alignments,
              const TranscriptVersion& transcript);

// Fraction of points with a non-empty hunk that carry all three scores;
// 1.0 when no point has a hunk. Throws kVersionMismatch.
double completeness(const EvaluationRecord& evaluation,
                    const Alignment& alignment);

// Two decimals, as in tables of human scores.
std::string format_fixed2(double value);

}  // namespace minutes::metrics

#endif  // MINUTES_METRICS_HPP_
