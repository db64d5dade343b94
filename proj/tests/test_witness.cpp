#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "kbp/errors.hpp"
#include "kbp/report_json.hpp"
#include "kbp/witness.hpp"

namespace kbp {
namespace {

Graph complete_minus(std::size_t n, Edge e) {
  Graph g = Graph::complete(n);
  g.remove_edge(e);
  return g;
}

// First seed whose G(n, p) sample percolates with at least `min_infections` infections.
Graph find_percolating(std::size_t n, double p, const Pattern& pattern, std::size_t min_infections, std::uint64_t start) {
  for (std::uint64_t seed = start;; ++seed) {
    Graph g = sample_gnp({n, p, seed});
    if (!percolates(g, pattern)) continue;
    if (pair_count(n) - g.edge_count() >= min_infections) return g;
  }
}

TEST(WitnessAlgorithm, InputEdgesWitnessThemselves) {
  const Graph g = sample_gnp({9, 0.5, 1});
  const WitnessRun run = run_witness_algorithm(g, Pattern::make(2, 2));
  for (const Edge& e : g.edges()) {
    const WitnessRecord& rec = run.records.at(e);
    EXPECT_FALSE(rec.infected);
    EXPECT_EQ(rec.witness_edges, std::vector<Edge>{e});
    EXPECT_EQ(rec.witness_vertices().size(), 2U);
  }
}

TEST(WitnessAlgorithm, SingleInfectionWitnessIsTheCopy) {
  for (auto [r, s] : {std::pair{3, 3}, {4, 3}, {3, 2}}) {
    const Pattern pattern = Pattern::make(r, s);
    const Edge e{0, 2};
    const WitnessRun run = run_witness_algorithm(complete_minus(static_cast<std::size_t>(r + s), e), pattern);
    const WitnessRecord& rec = run.records.at(e);
    EXPECT_TRUE(rec.infected);
    EXPECT_EQ(rec.witness_edge_count(), static_cast<std::size_t>(r * s - 1));
    EXPECT_EQ(rec.witness_vertices().size(), static_cast<std::size_t>(r + s));
    EXPECT_EQ(rec.depth, 1U);
  }
}

TEST(WitnessAlgorithm, WitnessEdgesComeFromInput) {
  const Pattern pattern = Pattern::make(2, 3);
  for (std::uint64_t start : {0U, 100U, 200U}) {
    const Graph g = find_percolating(8, 0.45, pattern, 3, start);
    const WitnessRun run = run_witness_algorithm(g, pattern);
    ASSERT_TRUE(run.closure.percolated);
    EXPECT_EQ(run.records.size(), pair_count(8));
    for (const auto& [edge, rec] : run.records)
      for (const Edge& w : rec.witness_edges) EXPECT_TRUE(g.has_edge(w));
    EXPECT_TRUE(check_witness_records(run.records, g, pattern).empty());
  }
}

TEST(RedEdgeTrace, SingleStep) {
  const Pattern pattern = Pattern::make(3, 3);
  const Edge e{1, 4};
  const Graph g = complete_minus(6, e);
  const WitnessRun run = run_witness_algorithm(g, pattern);
  const RedEdgeTrace trace = red_edge_trace(run.records, run.closure, e);
  EXPECT_EQ(trace.red_edges, std::vector<Edge>{e});
  ASSERT_EQ(trace.per_step.size(), 1U);
  EXPECT_EQ(trace.per_step[0], (StepStats{1, 8, 6, 1, 0}));

  // Base case of the step inequality holds with equality.
  const StepStats& st = trace.per_step[0];
  const Rational bound = lambda(pattern) * Rational(static_cast<std::int64_t>(st.nu_bt + st.k_t) - 6) + Rational(8);
  EXPECT_EQ(Rational(static_cast<std::int64_t>(st.e_bt)), bound);
  EXPECT_EQ(check_structural_lemmas(trace, pattern).status, CheckStatus::passed);
}

TEST(RedEdgeTrace, InputEdgeIsDomainError) {
  const Graph g = complete_minus(6, {1, 4});
  const WitnessRun run = run_witness_algorithm(g, Pattern::make(3, 3));
  EXPECT_THROW(red_edge_trace(run.records, run.closure, {0, 1}), DomainError);
}

TEST(RedEdgeTrace, MultiStepConstructionsAgree) {
  const Pattern pattern = Pattern::make(3, 3);
  const Graph g = find_percolating(12, 0.55, pattern, 12, 0);
  const WitnessRun run = run_witness_algorithm(g, pattern);
  std::size_t longest = 0;
  for (const InfectionStep& step : run.closure.trace) {
    const RedEdgeTrace trace = red_edge_trace(run.records, run.closure, step.edge);
    longest = std::max(longest, trace.red_edges.size());
    EXPECT_EQ(trace.reconstructed_witness, run.records.at(step.edge).witness_edges);
    EXPECT_EQ(trace.red_edges.back(), step.edge);
    EXPECT_EQ(trace.per_step.back().l_t, 1U);
    EXPECT_EQ(trace.per_step.back().k_t, 0U);
    const LemmaReport report = check_structural_lemmas(trace, pattern);
    EXPECT_EQ(report.status, CheckStatus::passed) << (report.violations.empty() ? "" : report.violations[0].detail);
  }
  EXPECT_GE(longest, 2U);
}

TEST(StructuralLemmas, OutsideHypothesisIsSkipped) {
  const Pattern pattern = Pattern::make(5, 3);
  const Edge e{0, 7};
  const WitnessRun run = run_witness_algorithm(complete_minus(8, e), pattern);
  const LemmaReport report = check_structural_lemmas(red_edge_trace(run.records, run.closure, e), pattern);
  EXPECT_EQ(report.status, CheckStatus::out_of_proven_range);
  EXPECT_TRUE(report.violations.empty());
}

TEST(StructuralLemmas, TamperedTraceIsReported) {
  const Pattern pattern = Pattern::make(3, 3);
  const Edge e{1, 4};
  const WitnessRun run = run_witness_algorithm(complete_minus(6, e), pattern);
  RedEdgeTrace trace = red_edge_trace(run.records, run.closure, e);
  trace.per_step[0].e_bt = 5;
  trace.reconstructed_witness.pop_back();
  const LemmaReport report = check_structural_lemmas(trace, pattern);
  EXPECT_EQ(report.status, CheckStatus::violated);
  EXPECT_GE(report.violations.size(), 2U);
}

TEST(SizeSandwich, Levels) {
  const Pattern pattern = Pattern::make(3, 3);
  const Edge e{1, 4};
  const WitnessRun single = run_witness_algorithm(complete_minus(6, e), pattern);

  const SandwichReport one = check_size_sandwich(single.records, 1, pattern);
  EXPECT_EQ(one.status, CheckStatus::passed);

  const SandwichReport top = check_size_sandwich(single.records, 8, pattern);
  EXPECT_EQ(top.status, CheckStatus::passed);
  EXPECT_EQ(top.witness, e);
  EXPECT_EQ(top.witness_size, 8U);

  EXPECT_EQ(check_size_sandwich(single.records, 9, pattern).status, CheckStatus::vacuous);

  const Graph g = find_percolating(14, 0.5, pattern, 20, 0);
  const WitnessRun run = run_witness_algorithm(g, pattern);
  std::size_t largest = 0;
  for (const auto& [edge, rec] : run.records) largest = std::max(largest, rec.witness_edge_count());
  const SandwichReport half = check_size_sandwich(run.records, largest / 2, pattern);
  EXPECT_EQ(half.status, CheckStatus::passed);
  EXPECT_GE(half.witness_size, largest / 2);
  EXPECT_LE(half.witness_size, 9 * (largest / 2));
}

TEST(WitnessRecords, DepthGrowthBound) {
  const Pattern pattern = Pattern::make(3, 3);
  const Graph g = find_percolating(13, 0.5, pattern, 15, 50);
  const WitnessRun run = run_witness_algorithm(g, pattern);
  EXPECT_TRUE(check_witness_records(run.records, g, pattern).empty());
  std::size_t max_depth = 0;
  for (const auto& [edge, rec] : run.records) max_depth = std::max(max_depth, rec.depth);
  EXPECT_GE(max_depth, 1U);
}

TEST(RunReport, JsonFields) {
  const Pattern pattern = Pattern::make(3, 3);
  const Graph g = find_percolating(10, 0.6, pattern, 5, 0);
  const RunReport report = check_run(g, pattern, 42, 2);
  EXPECT_EQ(report.violation_count(), 0U);
  const auto j = to_json(report);
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["pattern"]["r"], 3);
  EXPECT_EQ(j["edges"].size(), report.infected);
  EXPECT_EQ(j["edges"][0]["status"], "passed");
  EXPECT_EQ(j["size_sandwich"]["status"], "passed");
  EXPECT_TRUE(j["record_violations"].empty());
}

}  // namespace
}  // namespace kbp
