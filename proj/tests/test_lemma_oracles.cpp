#include <algorithm>
#include <iostream>
#include <random>

#include <gtest/gtest.h>

#include "kbp/errors.hpp"
#include "kbp/lemma_oracles.hpp"
#include "kbp/report_json.hpp"

namespace kbp {
namespace {

Rational single_value(const Pattern& pt, int p, int q) {
  return lambda(pt) * Rational(p + q - pt.r - pt.s) + Rational(pt.r * pt.s - 1 - p * q);
}

TEST(SingleOverlap, PassesOnBalancedPattern) {
  const OverlapReport report = verify_single_overlap(Pattern::make(4, 3));
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(report.worst_slack, Rational(0));
  // (P, Q) = (1, 1) sits exactly on the boundary for every pattern.
  EXPECT_EQ(report.worst, (OverlapInstance{{1}, {1}}));
  EXPECT_EQ(report.instances, 4U * 3U - 1U);
}

// lambda (2 - r - s) = -(rs - 2), so the single shared edge case has slack 0.
TEST(SingleOverlap, UnitPairValue) {
  for (int s = 3; s <= 6; ++s)
    for (int r = s; r <= 12; ++r) EXPECT_EQ(single_value(Pattern::make(r, s), 1, 1), Rational(0));
}

TEST(SingleOverlap, FailureWitnessOutsideBalancedRange) {
  const OverlapReport report = verify_single_overlap(Pattern::make(5, 3));
  EXPECT_FALSE(report.passed);
  EXPECT_EQ(report.worst, (OverlapInstance{{4}, {3}}));
  EXPECT_EQ(report.worst_slack, Rational(-1, 6));
}

TEST(SingleOverlap, ExhaustiveOverProvenRange) {
  for (int s = 3; s <= 6; ++s)
    for (int r = s; r <= (s - 2) * (s - 2) + s; ++r) {
      const Pattern pt = Pattern::make(r, s);
      const OverlapReport report = verify_single_overlap(pt);
      EXPECT_TRUE(report.passed) << pt.name() << " worst slack " << report.worst_slack.to_string();
      // Oracle: independent minimum.
      Rational worst = single_value(pt, 1, 1);
      for (int p = 1; p <= r; ++p)
        for (int q = 1; q <= s; ++q)
          if (p + q <= r + s - 1) worst = std::min(worst, single_value(pt, p, q));
      EXPECT_EQ(report.worst_slack, worst);
    }
}

TEST(SingleOverlap, RejectsSmallParts) { EXPECT_THROW(verify_single_overlap(Pattern::make(4, 2)), DomainError); }

TEST(MultiOverlap, EqualityCase) {
  const OverlapReport report = verify_multi_overlap(Pattern::make(4, 3), 2);
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(report.worst_slack, Rational(0));
  EXPECT_EQ(report.worst, (OverlapInstance{{1, 1}, {1, 1}}));
}

TEST(MultiOverlap, InstanceCountMatchesOracle) {
  const Pattern pt = Pattern::make(5, 4);
  const OverlapReport report = verify_multi_overlap(pt, 2);
  std::uint64_t expected = 0;
  for (int p1 = 1; p1 <= 5; ++p1)
    for (int p2 = 1; p1 + p2 <= 5; ++p2)
      for (int q1 = 1; q1 <= 4; ++q1)
        for (int q2 = 1; q1 + q2 <= 4; ++q2)
          if (p1 + p2 + q1 + q2 <= 8) ++expected;
  EXPECT_EQ(report.instances, expected);
}

TEST(MultiOverlap, ExhaustiveSmallPatterns) {
  for (int s = 3; s <= 8; ++s)
    for (int r = s; r <= 8; ++r) {
      const Pattern pt = Pattern::make(r, s);
      const OverlapReport report = verify_multi_overlap(pt, 4);
      EXPECT_TRUE(report.passed) << pt.name() << " worst slack " << report.worst_slack.to_string();
    }
  EXPECT_TRUE(verify_multi_overlap(Pattern::make(8, 3), 3).passed);
}

TEST(MultiOverlap, InstanceCap) {
  EXPECT_THROW(verify_multi_overlap(Pattern::make(60, 60), 6), RangeError);
  EXPECT_THROW(verify_multi_overlap(Pattern::make(4, 3), 1), InputError);
}

TEST(Case3, BoundaryRows) {
  const Case3Report four = verify_case3_boundary(Pattern::make(4, 3), 2);
  ASSERT_EQ(four.rows.size(), 1U);
  EXPECT_EQ(four.rows[0].max_product_sum, 7);
  EXPECT_EQ(four.rows[0].product_ceiling, 10);
  EXPECT_EQ(four.rows[0].right_side, Rational(8));
  EXPECT_TRUE(four.passed);

  // Here the right side sits below rs - m, so the intermediate step of the
  // argument does not go through; the end-to-end inequality still holds.
  const Case3Report three = verify_case3_boundary(Pattern::make(3, 3), 4);
  ASSERT_EQ(three.rows.size(), 2U);
  EXPECT_EQ(three.rows[0].max_product_sum, 5);
  EXPECT_EQ(three.rows[0].right_side, Rational(11, 2));
  EXPECT_TRUE(three.rows[0].inequality_holds);
  EXPECT_FALSE(three.rows[0].right_side_exceeds_ceiling);
  EXPECT_EQ(three.rows[1].m, 3);
  EXPECT_EQ(three.rows[1].max_product_sum, 3);
  EXPECT_TRUE(three.passed);

  const auto j = to_json(three);
  EXPECT_EQ(j["rows"][0]["right_side"], "11/2");
  EXPECT_EQ(j["rows"][0]["right_side_exceeds_ceiling"], false);
}

TEST(Case3, ProvenRange) {
  for (int s = 3; s <= 6; ++s)
    for (int r = s; r <= std::min(12, (s - 2) * (s - 2) + s); ++r)
      EXPECT_TRUE(verify_case3_boundary(Pattern::make(r, s), 4).passed) << r << "," << s;
}

// Second enumerator: choose the m edges first, then every vertex set that
// contains them and the endpoints of e.
SubgraphCount count_by_edge_subsets(const Graph& g, Edge e, const Pattern& pattern, int m) {
  const std::vector<Edge> edges = g.edges();
  const std::size_t n = g.order();
  const Rational lam = lambda(pattern);
  SubgraphCount total = 0;
  if (static_cast<std::size_t>(m) > edges.size()) return 0;
  std::vector<bool> pick(edges.size(), false);
  std::fill(pick.begin(), pick.begin() + m, true);
  do {
    std::uint32_t forced = (1U << e.u) | (1U << e.v);
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (pick[i]) forced |= (1U << edges[i].u) | (1U << edges[i].v);
    for (std::uint32_t set = 0; set < (1U << n); ++set) {
      if ((set & forced) != forced) continue;
      const auto size = static_cast<std::int64_t>(__builtin_popcount(set));
      if (Rational(m) >= lam * Rational(size - 2) + Rational(1)) ++total;
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return total;
}

TEST(DenseSubgraphs, SmallCases) {
  const Pattern pt = Pattern::make(3, 3);
  EXPECT_EQ(count_dense_subgraphs(Graph::complete(4), {0, 1}, pt, 6), SubgraphCount{1});
  EXPECT_EQ(count_dense_subgraphs(Graph(6), {0, 1}, pt, 1), SubgraphCount{0});
  EXPECT_EQ(count_dense_subgraphs(Graph(6), {0, 1}, pt, 0), SubgraphCount{0});
  EXPECT_THROW(count_dense_subgraphs(Graph(13), {0, 1}, pt, 1), RangeError);
  EXPECT_EQ(to_string(SubgraphCount{0}), "0");
  EXPECT_EQ(to_string(SubgraphCount{1} << 100), "1267650600228229401496703205376");
}

TEST(DenseSubgraphs, AgreesWithEdgeSubsetEnumeration) {
  std::mt19937_64 rng(2024);
  const Pattern patterns[] = {Pattern::make(3, 3), Pattern::make(4, 3), Pattern::make(2, 2)};
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + rng() % 5;
    const Graph g = sample_gnp({n, 0.5, rng()});
    const Pattern& pt = patterns[trial % 3];
    const Edge e{0, 1};
    const int m = 1 + static_cast<int>(rng() % std::min<std::size_t>(7, g.edge_count() + 1));
    EXPECT_EQ(to_string(count_dense_subgraphs(g, e, pt, m)), to_string(count_by_edge_subsets(g, e, pt, m)))
        << "trial " << trial << " n=" << n << " m=" << m;
  }
}

// Diagnostic only: mean Y_m over small random graphs near the density where
// witness-like subgraphs start to appear.
TEST(DenseSubgraphs, MonteCarloDiagnostic) {
  const Pattern pt = Pattern::make(3, 3);
  for (int m : {4, 6, 8}) {
    SubgraphCount sum = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) sum += count_dense_subgraphs(sample_gnp({9, 0.4, seed}), {0, 1}, pt, m);
    std::cout << "Y_" << m << " mean over 20 samples of G(9, 0.4): " << static_cast<double>(sum) / 20.0 << '\n';
  }
}

}  // namespace
}  // namespace kbp
