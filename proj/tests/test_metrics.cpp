#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "minutes/metrics.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace minutes;
using namespace minutes::testing;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected minutes::Error");
  return Errc::kParseError;
}

// Every code vector of length n over points 0..n_points-1 plus the three
// negative codes.
std::vector<std::vector<int>> all_codes(std::size_t n, int n_points) {
  std::vector<int> alphabet = {kUnaligned, kSmallTalkCode, kOrganizationalCode};
  for (int p = 0; p < n_points; ++p) alphabet.push_back(p);
  std::vector<std::vector<int>> out;
  std::vector<std::size_t> digits(n, 0);
  for (;;) {
    std::vector<int> codes;
    for (auto d : digits) codes.push_back(alphabet[d]);
    out.push_back(codes);
    std::size_t i = 0;
    while (i < n && ++digits[i] == alphabet.size()) digits[i++] = 0;
    if (i == n) break;
  }
  return out;
}

double agreement_of(const std::vector<std::vector<int>>& codes) {
  std::vector<Alignment> alignments;
  for (std::size_t a = 0; a < codes.size(); ++a) {
    alignments.push_back(alignment_from_codes(codes[a], "a" + std::to_string(a)));
  }
  std::vector<const Alignment*> ptrs;
  for (const auto& a : alignments) ptrs.push_back(&a);
  return metrics::iaa(ptrs, numbered_transcript(codes.front().size())).value;
}

}  // namespace

TEST_CASE("coverage fixture") {
  Meeting m = coverage_fixture();
  auto report = metrics::coverage(*m.find_alignment({"t", "s", ""}), m.transcript("t"));
  CHECK(report.total_das == 4);
  CHECK(report.das_to_points == 2);
  CHECK(report.das_to_meta == 1);
  CHECK(report.summary_coverage == 0.5);
  CHECK(report.annotated_coverage == 0.75);
  CHECK(metrics::format_fixed2(report.summary_coverage) == "0.50");
}

TEST_CASE("every DA aligned gives coverage 1.00") {
  auto tv = numbered_transcript(5);
  auto report = metrics::coverage(alignment_from_codes({0, 1, 1, 0, 2}, ""), tv);
  CHECK(report.summary_coverage == 1.0);
  CHECK(metrics::format_fixed2(report.summary_coverage) == "1.00");
}

TEST_CASE("empty alignment over 10 DAs") {
  auto report = metrics::coverage(alignment_from_codes({}, ""), numbered_transcript(10));
  CHECK(report.summary_coverage == 0.0);
  CHECK(report.annotated_coverage == 0.0);
}

TEST_CASE("coverage errors") {
  CHECK(code_of([] { metrics::coverage(alignment_from_codes({}, ""), numbered_transcript(0)); }) ==
        Errc::kEmptyTranscript);
  auto tv = numbered_transcript(3);
  tv.name = "other";
  CHECK(code_of([&] { metrics::coverage(alignment_from_codes({}, ""), tv); }) ==
        Errc::kVersionMismatch);
}

TEST_CASE("coverage equals the oracle for every assignment up to 6 DAs") {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto tv = numbered_transcript(n);
    for (const auto& codes : all_codes(n, 3)) {
      auto oracle = coverage_oracle(codes);
      auto report = metrics::coverage(alignment_from_codes(codes, ""), tv);
      REQUIRE(report.das_to_points == oracle.to_points);
      REQUIRE(report.das_to_meta == oracle.to_meta);
      REQUIRE(report.summary_coverage ==
              static_cast<double>(oracle.to_points) / static_cast<double>(oracle.total));
    }
  }
}

TEST_CASE("iaa fixture is one quarter") {
  Meeting m = iaa_fixture();
  std::vector<const Alignment*> ptrs;
  for (const auto* name : {"a0", "a1", "a2"}) ptrs.push_back(m.find_alignment({"t", "s", name}));
  auto agreement = metrics::iaa(ptrs, m.transcript("t"));
  CHECK(agreement.agreeing == 1);
  CHECK(agreement.total_das == 4);
  CHECK(agreement.value == 0.25);
  CHECK(agreement.per_da[0].has_value());
  CHECK_FALSE(agreement.per_da[1].has_value());
  CHECK(agreement.value ==
        static_cast<double>(agreement_oracle({{0, 0, -1, -2}, {0, 0, -1, -2}, {0, 1, -1, -2}})) /
            4.0);
}

TEST_CASE("identical alignments agree on exactly their summary coverage") {
  Rng rng(5);
  for (int round = 0; round < 500; ++round) {
    const std::size_t n = 1 + rng() % 8;
    std::vector<int> codes;
    for (std::size_t i = 0; i < n; ++i) codes.push_back(static_cast<int>(rng() % 6) - 3);
    auto tv = numbered_transcript(n);
    auto a = alignment_from_codes(codes, "a");
    auto b = alignment_from_codes(codes, "b");
    const Alignment* both[] = {&a, &b};
    CHECK(metrics::iaa(both, tv).value == metrics::coverage(a, tv).summary_coverage);
  }
}

TEST_CASE("disjoint alignments have zero agreement") {
  CHECK(agreement_of({{0, 0, 1}, {1, 1, 0}}) == 0.0);
}

TEST_CASE("iaa errors") {
  auto tv = numbered_transcript(2);
  auto a = alignment_from_codes({0, 0}, "a");
  auto b = alignment_from_codes({0, 0}, "b");
  const Alignment* one[] = {&a};
  CHECK(code_of([&] { metrics::iaa(one, tv); }) == Errc::kTooFewAnnotators);
  b.key.summary = "other";
  const Alignment* two[] = {&a, &b};
  CHECK(code_of([&] { metrics::iaa(two, tv); }) == Errc::kVersionMismatch);
}

TEST_CASE("iaa equals the oracle for every pair of assignments up to 3 DAs") {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto all = all_codes(n, 3);
    for (const auto& x : all) {
      for (const auto& y : all) {
        REQUIRE(agreement_of({x, y}) ==
                static_cast<double>(agreement_oracle({x, y})) / static_cast<double>(n));
      }
    }
  }
}

TEST_CASE("iaa properties on random annotator sets") {
  Rng rng(6);
  for (int round = 0; round < 2000; ++round) {
    const std::size_t n = 1 + rng() % 8;
    const std::size_t k = 2 + rng() % 3;
    std::vector<std::vector<int>> codes(k);
    for (auto& c : codes) {
      for (std::size_t i = 0; i < n; ++i) c.push_back(static_cast<int>(rng() % 5) - 3);
    }
    const double value = agreement_of(codes);
    CHECK(value >= 0.0);
    CHECK(value <= 1.0);
    auto tv = numbered_transcript(n);
    for (const auto& c : codes) {
      CHECK(value <= metrics::coverage(alignment_from_codes(c, ""), tv).summary_coverage);
    }
    auto shuffled = codes;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(agreement_of(shuffled) == value);
    auto more = codes;
    more.push_back(codes[rng() % k]);
    more.back()[rng() % n] = static_cast<int>(rng() % 5) - 3;
    CHECK(agreement_of(more) <= value);
  }
}

TEST_CASE("doc_aggregate") {
  EvaluationRecord e;
  e.per_point[PointId{0}] = {3, 1, {}};
  e.per_point[PointId{1}] = {4, {}, {}};
  e.per_point[PointId{2}] = {5, 2, {}};
  auto s = metrics::doc_aggregate(e);
  CHECK(s.avg_adequacy == 4.0);
  CHECK(s.avg_grammaticality == 1.5);
  CHECK_FALSE(s.avg_fluency);
  CHECK(s.n_scored_points == 3);
  CHECK_FALSE(s.doc_adequacy);

  EvaluationRecord empty;
  empty.doc_adequacy = 4;
  auto t = metrics::doc_aggregate(empty);
  CHECK_FALSE(t.avg_adequacy);
  CHECK_FALSE(t.avg_grammaticality);
  CHECK_FALSE(t.avg_fluency);
  CHECK(t.n_scored_points == 0);
  CHECK(t.doc_adequacy == 4);
}

TEST_CASE("constant scores average to the constant") {
  for (int k = 1; k <= 5; ++k) {
    for (std::size_t n = 1; n <= 40; ++n) {
      EvaluationRecord e;
      for (std::size_t i = 0; i < n; ++i) e.per_point[PointId{i}] = {k, k, k};
      auto s = metrics::doc_aggregate(e);
      CHECK(s.avg_adequacy == static_cast<double>(k));
      CHECK(s.avg_grammaticality == static_cast<double>(k));
      CHECK(s.avg_fluency == static_cast<double>(k));
    }
  }
}

TEST_CASE("doc_aggregate ignores point order") {
  Rng rng(8);
  for (int round = 0; round < 200; ++round) {
    std::vector<PointScores> scores;
    for (int i = 0; i < 1 + static_cast<int>(rng() % 10); ++i) {
      scores.push_back({static_cast<int>(1 + rng() % 5), static_cast<int>(1 + rng() % 5), {}});
    }
    EvaluationRecord a, b;
    auto perm = scores;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < scores.size(); ++i) {
      a.per_point[PointId{i}] = scores[i];
      b.per_point[PointId{100 - i}] = perm[i];
    }
    auto x = metrics::doc_aggregate(a);
    auto y = metrics::doc_aggregate(b);
    CHECK(x.avg_adequacy == y.avg_adequacy);
    CHECK(x.avg_grammaticality == y.avg_grammaticality);
    CHECK(*x.avg_adequacy >= 1.0);
    CHECK(*x.avg_adequacy <= 5.0);
  }
}

TEST_CASE("completeness") {
  auto al = alignment_from_codes({0, 1, 2, 2, -2}, "");
  EvaluationRecord e;
  e.key = {"t", "s", "E1"};
  for (std::uint64_t p = 0; p < 3; ++p) e.per_point[PointId{p}] = {5, 5, 5};
  CHECK(metrics::completeness(e, al) == 1.0);

  auto four = alignment_from_codes({0, 1, 2, 3}, "");
  EvaluationRecord one;
  one.key = e.key;
  one.per_point[PointId{2}] = {1, 2, 3};
  one.per_point[PointId{3}] = {1, 2, {}};
  CHECK(metrics::completeness(one, four) == 0.25);

  CHECK(metrics::completeness(one, alignment_from_codes({-1, -2, -3}, "")) == 1.0);

  auto other = al;
  other.key.summary = "elsewhere";
  CHECK(code_of([&] { metrics::completeness(e, other); }) == Errc::kVersionMismatch);
}

TEST_CASE("format_fixed2") {
  CHECK(metrics::format_fixed2(0.0) == "0.00");
  CHECK(metrics::format_fixed2(0.125) == "0.12");
  CHECK(metrics::format_fixed2(2.0 / 3.0) == "0.67");
  CHECK(metrics::format_fixed2(5.0) == "5.00");
}
