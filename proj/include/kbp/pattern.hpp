#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "kbp/rational.hpp"

namespace kbp {

/// The complete bipartite pattern K_{r,s}, stored with r >= s >= 2.
struct Pattern {
  int r = 0;
  int s = 0;

  /// Canonicalizes the part order. Rejects a smaller part below 2 with InputError.
  static Pattern make(int a, int b);

  int vertex_count() const { return r + s; }
  int edge_count() const { return r * s; }
  std::string name() const { return "K_{" + std::to_string(r) + "," + std::to_string(s) + "}"; }

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// (rs - 2) / (r + s - 2), exact.
Rational lambda(const Pattern& pattern);
Rational lambda(int r, int s);

/// True iff r >= 4, s >= 3 and r <= (s-2)^2 + s.
bool is_balanced_closed_form(const Pattern& pattern);
/// The closed form says nothing when s = 2; it reports false there.
bool closed_form_applies(const Pattern& pattern);

/// r, s >= 3 and r <= (s-2)^2 + s: the range in which the witness-set
/// inequalities are proven.
bool in_witness_lemma_range(const Pattern& pattern);

struct BalancednessReport {
  bool balanced = false;
  bool density_condition_holds = false;
  /// Part sizes (p, q) of the subgraph with the largest ratio (e(F)-1)/(v(F)-2).
  std::pair<int, int> worst_subgraph{0, 0};
  Rational worst_ratio;
  /// True when the worst ratio is attained by K_{r,s} minus one edge.
  bool worst_is_edge_deleted = false;
};

/// Evaluates the balanced-graph definition directly over all (p, q) part sizes.
/// Requires r <= 64 (RangeError otherwise).
BalancednessReport is_balanced_brute_force(const Pattern& pattern);

/// lambda^2 / (e * r * s * ln n * n^{1/lambda}): the largest p with
/// e * p * n^{1/lambda} * ln n * r * s <= lambda^2. Requires s >= 3 and n >= 3.
double lower_bound_p(const Pattern& pattern, std::size_t n);

/// C * (ln n / ln ln n)^{2/lambda} * n^{-1/lambda} for a balanced pattern, n >= 16, C > 0.
double upper_bound_p(const Pattern& pattern, std::size_t n, double constant);

/// The same curve without the balancedness gate, for plotting reference lines.
double upper_bound_curve(const Pattern& pattern, std::size_t n, double constant);

/// c * (ln n)^{-1} * n^{-1/lambda}: the lower threshold curve, parametric in c.
double theorem_lower_curve(const Pattern& pattern, std::size_t n, double constant);

struct GeneralLowerBound {
  double value = 0.0;
  Pattern reduced;
};

/// (e ln n)^{-1} lambda(r', s')^2 n^{-1/lambda(r', s')} maximized over the
/// sub-patterns r' <= r, s' <= s with r' <= (s'-2)^2 + s'.
GeneralLowerBound general_lower_bound_p(const Pattern& pattern, std::size_t n);

}  // namespace kbp
