#ifndef MINUTES_REPORT_HPP_
#define MINUTES_REPORT_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minutes/json.hpp"
#include "minutes/meeting.hpp"
#include "minutes/metrics.hpp"

namespace minutes::report {

// The alignment an annotator's numbers are computed on: their own alignment
// of the pair when it exists, otherwise the shared one. Null if neither.
const Alignment* resolve_alignment(const Meeting& meeting, const std::string& transcript,
                                   const std::string& summary,
                                   const std::string& annotator);

struct AnnotatorMetrics {
  std::string annotator;
  bool own_alignment = false;
  metrics::CoverageReport coverage;
  std::optional<metrics::DocScores> scores;  // absent without an evaluation
  std::optional<double> completeness;
};

struct MetricsReport {
  std::string meeting;
  std::string transcript;
  std::string summary;
  metrics::CoverageReport coverage;  // shared alignment, empty if none yet
  std::vector<AnnotatorMetrics> annotators;
  std::optional<metrics::Agreement> agreement;
};

// Read-only: missing alignments are treated as empty. With want_iaa, every
// named annotator must own an alignment of the pair.
MetricsReport build(const Meeting& meeting, const std::string& transcript,
                    const std::string& summary,
                    std::span<const std::string> annotators, bool want_iaa);

json::json to_json(const MetricsReport& report, const Meeting& meeting);
// key: value lines, ratios and averages rounded to two decimals.
std::string format_human(const MetricsReport& report, const Meeting& meeting,
                         bool verbose);

}  // namespace minutes::report

#endif  // MINUTES_REPORT_HPP_
