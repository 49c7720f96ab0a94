#include "minutes/report.hpp"

#include <sstream>

namespace minutes::report {

const Alignment* resolve_alignment(const Meeting& meeting, const std::string& transcript,
                                   const std::string& summary,
                                   const std::string& annotator) {
  if (!annotator.empty()) {
    if (const auto* own = meeting.find_alignment({transcript, summary, annotator})) return own;
  }
  return meeting.find_alignment({transcript, summary, ""});
}

MetricsReport build(const Meeting& meeting, const std::string& transcript,
                    const std::string& summary, std::span<const std::string> annotators,
                    bool want_iaa) {
  const auto& tv = meeting.transcript(transcript);
  meeting.summary(summary);
  const Alignment empty{{transcript, summary, ""}, {}};

  MetricsReport report;
  report.meeting = meeting.id();
  report.transcript = transcript;
  report.summary = summary;
  const Alignment* shared = meeting.find_alignment({transcript, summary, ""});
  report.coverage = metrics::coverage(shared ? *shared : empty, tv);

  if (want_iaa && annotators.size() < 2) {
    throw Error(Errc::kTooFewAnnotators,
                "agreement needs at least two annotators, got " +
                    std::to_string(annotators.size()));
  }
  std::vector<const Alignment*> own_alignments;
  for (const auto& name : annotators) {
    if (!is_valid_name(name)) {
      throw Error(Errc::kInvalidName, "invalid annotator name '" + name + "'");
    }
    AnnotatorMetrics entry;
    entry.annotator = name;
    const Alignment* own = meeting.find_alignment({transcript, summary, name});
    entry.own_alignment = own != nullptr;
    const Alignment* used = own ? own : (shared ? shared : &empty);
    entry.coverage = metrics::coverage(*used, tv);
    if (const auto* record = meeting.find_evaluation({transcript, summary, name})) {
      entry.scores = metrics::doc_aggregate(*record);
      entry.completeness = metrics::completeness(*record, *used);
    }
    if (want_iaa) {
      if (!own) {
        throw Error(Errc::kUnknownAnnotator, "annotator '" + name +
                                                 "' has no alignment of " + transcript +
                                                 "/" + summary);
      }
      own_alignments.push_back(own);
    }
    report.annotators.push_back(std::move(entry));
  }
  if (want_iaa) report.agreement = metrics::iaa(own_alignments, tv);
  return report;
}

json::json to_json(const MetricsReport& report, const Meeting& meeting) {
  json::json annotators = json::json::array();
  for (const auto& a : report.annotators) {
    annotators.push_back(
        {{"annotator", a.annotator},
         {"alignment", a.own_alignment ? "own" : "shared"},
         {"coverage", json::to_json(a.coverage)},
         {"scores", a.scores ? json::to_json(*a.scores) : json::json(nullptr)},
         {"completeness", a.completeness ? json::json(*a.completeness) : json::json(nullptr)}});
  }
  json::json out = {{"meeting", report.meeting},
                    {"transcript", report.transcript},
                    {"summary", report.summary},
                    {"coverage", json::to_json(report.coverage)},
                    {"annotators", std::move(annotators)}};
  out["agreement"] = report.agreement
                         ? json::to_json(*report.agreement,
                                         meeting.transcript(report.transcript))
                         : json::json(nullptr);
  return out;
}

namespace {

std::string fixed2(const std::optional<double>& v) {
  return v ? metrics::format_fixed2(*v) : "n/a";
}

void write_coverage(std::ostream& out, const metrics::CoverageReport& c,
                    const std::string& indent) {
  out << indent << "total_das: " << c.total_das << '\n'
      << indent << "das_to_points: " << c.das_to_points << '\n'
      << indent << "das_to_meta: " << c.das_to_meta << '\n'
      << indent << "summary_coverage: " << metrics::format_fixed2(c.summary_coverage) << '\n'
      << indent << "annotated_coverage: " << metrics::format_fixed2(c.annotated_coverage)
      << '\n';
}

}  // namespace

std::string format_human(const MetricsReport& report, const Meeting& meeting,
                         bool verbose) {
  std::ostringstream out;
  out << "meeting: " << report.meeting << '\n'
      << "transcript: " << report.transcript << '\n'
      << "summary: " << report.summary << '\n';
  if (!report.agreement) write_coverage(out, report.coverage, "");
  for (const auto& a : report.annotators) {
    out << "annotator: " << a.annotator << " (" << (a.own_alignment ? "own" : "shared")
        << " alignment)\n";
    if (report.agreement) continue;
    write_coverage(out, a.coverage, "  ");
    if (a.scores) {
      out << "  avg_adequacy: " << fixed2(a.scores->avg_adequacy) << '\n'
          << "  avg_grammaticality: " << fixed2(a.scores->avg_grammaticality) << '\n'
          << "  avg_fluency: " << fixed2(a.scores->avg_fluency) << '\n'
          << "  doc_adequacy: "
          << (a.scores->doc_adequacy ? std::to_string(*a.scores->doc_adequacy) : "n/a")
          << '\n'
          << "  scored_points: " << a.scores->n_scored_points << '\n'
          << "  completeness: " << fixed2(a.completeness) << '\n';
    } else {
      out << "  evaluation: none\n";
    }
  }
  if (report.agreement) {
    const auto& g = *report.agreement;
    out << "iaa: " << metrics::format_fixed2(g.value) << '\n'
        << "agreeing_das: " << g.agreeing << '\n'
        << "total_das: " << g.total_das << '\n';
    if (verbose) {
      const auto& tv = meeting.transcript(report.transcript);
      const auto& sv = meeting.summary(report.summary);
      for (std::size_t i = 0; i < g.per_da.size(); ++i) {
        out << "da " << i << " [" << tv.das[i].speaker << "]: ";
        if (g.per_da[i]) {
          out << "agree on point " << *sv.index_of(*g.per_da[i]) << '\n';
        } else {
          out << "no agreement\n";
        }
      }
    }
  }
  return out.str();
}

}  // namespace minutes::report
