#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kbp/graph.hpp"
#include "kbp/pattern.hpp"
#include "kbp/rational.hpp"

namespace kbp {

/// Hard cap on the number of instances any exhaustive sweep may visit.
inline constexpr std::uint64_t kMaxOverlapInstances = 10'000'000;

/// Part sizes (P_i, Q_i) of m overlaps between a new copy and earlier components.
struct OverlapInstance {
  std::vector<int> p;
  std::vector<int> q;

  std::size_t parts() const { return p.size(); }
  friend auto operator<=>(const OverlapInstance&, const OverlapInstance&) = default;
};

/// Verdict of an exhaustive inequality sweep. `slack` is right side minus left
/// side, so the sweep passes iff the worst slack is nonnegative.
struct OverlapReport {
  Pattern pattern;
  std::string inequality;
  bool passed = true;
  std::uint64_t instances = 0;
  OverlapInstance worst;
  Rational worst_slack;
};

/// (P + Q - r - s) lambda + rs - 1 - PQ >= 0 over 1 <= P <= r, 1 <= Q <= s,
/// P + Q <= r + s - 1. Requires r, s >= 3.
OverlapReport verify_single_overlap(const Pattern& pattern);

/// sum P_i Q_i <= lambda (sum (P_i + Q_i) - 2m) + m over all ordered instances
/// with 2 <= m <= m_max, P_i, Q_i >= 1, sum P_i <= r, sum Q_i <= s and
/// sum (P_i + Q_i) <= r + s - 1. Requires r, s >= 3 and m_max >= 2.
OverlapReport verify_multi_overlap(const Pattern& pattern, int m_max);

struct Case3Row {
  int m = 0;
  std::uint64_t instances = 0;
  int max_product_sum = 0;           // max sum P_i Q_i with sum P_i = r, sum Q_i = s
  int product_ceiling = 0;           // rs - m
  Rational right_side;               // lambda (r + s - 2m) + m
  bool within_ceiling = true;        // max_product_sum <= rs - m
  bool inequality_holds = true;      // max_product_sum <= right_side
  bool right_side_exceeds_ceiling = true;  // right_side >= rs - m; recorded, not asserted
};

struct Case3Report {
  Pattern pattern;
  bool passed = true;  // every row within the ceiling and satisfying the inequality
  std::vector<Case3Row> rows;
};

/// The fully-overlapping case: sum P_i = r and sum Q_i = s exactly.
Case3Report verify_case3_boundary(const Pattern& pattern, int m_max);

using SubgraphCount = unsigned __int128;

std::string to_string(SubgraphCount value);

/// Number of subgraphs F = (V', E') of g with both endpoints of e in V',
/// E' a set of exactly m edges of g[V'], and m >= lambda (|V'| - 2) + 1.
/// Requires n <= 12.
SubgraphCount count_dense_subgraphs(const Graph& g, Edge e, const Pattern& pattern, int m);

}  // namespace kbp
