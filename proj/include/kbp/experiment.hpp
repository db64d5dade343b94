#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kbp/pattern.hpp"

namespace kbp {

/// SplitMix64 output at position index + 1 of the stream seeded with
/// base_seed: z = base_seed + (index + 1) * 0x9E3779B97F4A7C15, then the
/// standard xor-shift-multiply finalizer.
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t index);

struct TrialBatch {
  std::size_t n = 0;
  Pattern pattern;
  double p = 0.0;
  std::size_t trials = 0;
  std::uint64_t base_seed = 0;
};

struct Estimate {
  std::size_t successes = 0;
  std::size_t trials = 0;
  double fraction = 0.0;
  double ci_lo = 0.0;  // 95% Wilson score interval
  double ci_hi = 0.0;
};

Estimate wilson_estimate(std::size_t successes, std::size_t trials);

/// Fraction of G(n, p) samples, trial i seeded by trial_seed(base_seed, i),
/// whose closure is complete. Trials run across OpenMP threads; outcomes are
/// merged by trial index so the result does not depend on the schedule.
Estimate estimate_probability(const TrialBatch& batch);

/// Same computation on the calling thread only.
Estimate estimate_probability_serial(const TrialBatch& batch);

struct Probe {
  double p = 0.0;
  Estimate estimate;
};

struct ThresholdSearch {
  std::size_t n = 0;
  Pattern pattern;
  std::size_t trials_per_probe = 200;
  double p_lo = 0.0;
  double p_hi = 1.0;
  double rel_tol = 0.05;
  std::uint64_t base_seed = 0;
};

struct ThresholdResult {
  double p_hat = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t expansions = 0;
  std::size_t bisection_probes = 0;
  std::vector<Probe> probes;  // every probe in evaluation order
};

using ProbeFunction = std::function<Estimate(double)>;

inline constexpr int kMaxBracketExpansions = 20;

/// Bisection for the smallest p whose probe fraction is at least 1/2. The
/// bracket is first widened geometrically (at most 20 times) until the lower
/// end probes below 1/2 and the upper end at or above it. Stops once
/// (hi - lo) / hi <= rel_tol and returns the midpoint.
ThresholdResult bisect_threshold(const ProbeFunction& probe, double p_lo, double p_hi, double rel_tol);

/// bisect_threshold with estimate_probability probes. Every probe reuses the
/// same trial seeds, so each trial's graph grows monotonically in p.
/// Throws BracketError when n < r + s.
ThresholdResult find_threshold(const ThresholdSearch& search);

/// [lower_bound_p / 4, min(1, 40 lower_bound_p)] for r, s >= 3, else [1e-4, 0.999].
std::pair<double, double> default_bracket(const Pattern& pattern, std::size_t n);

struct ScalingRow {
  std::size_t n = 0;
  std::optional<double> p_hat;  // empty when the search failed
  double ci_half_width = 0.0;   // half the final bracket width
  std::size_t trials = 0;
  std::optional<double> lower_curve;  // lower_bound_p
  std::optional<double> upper_curve;  // upper_bound_curve with C = 1
  std::string failure;
};

struct ScalingResult {
  Pattern pattern;
  std::vector<ScalingRow> rows;  // sorted by n
  std::optional<double> fitted_exponent;
  double theory_exponent = 0.0;  // -1 / lambda
};

/// Least-squares slope of y against x. Needs at least two distinct x values.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

ScalingResult sweep_scaling(const Pattern& pattern, std::vector<std::size_t> n_list, std::size_t trials_per_probe,
                            double rel_tol, std::uint64_t base_seed);

}  // namespace kbp
