#include "kbp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <omp.h>

#include "kbp/closure.hpp"
#include "kbp/errors.hpp"
#include "kbp/graph.hpp"

namespace kbp {

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t index) {
  std::uint64_t z = base_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Estimate wilson_estimate(std::size_t successes, std::size_t trials) {
  if (trials == 0) throw InputError("a trial batch needs at least one trial");
  constexpr double z = 1.959963984540054;
  const double nt = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nt;
  const double denom = 1.0 + z * z / nt;
  const double centre = (phat + z * z / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / nt + z * z / (4.0 * nt * nt)) / denom;
  Estimate e;
  e.successes = successes;
  e.trials = trials;
  e.fraction = phat;
  e.ci_lo = std::max(0.0, centre - half);
  e.ci_hi = std::min(1.0, centre + half);
  return e;
}

namespace {

void validate(const TrialBatch& batch) {
  if (batch.trials == 0) throw InputError("a trial batch needs at least one trial");
  if (!(batch.p >= 0.0 && batch.p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
}

bool run_trial(const TrialBatch& batch, std::size_t index) {
  const Graph g = sample_gnp({batch.n, batch.p, trial_seed(batch.base_seed, index)});
  return percolates(g, batch.pattern);
}

}  // namespace

Estimate estimate_probability(const TrialBatch& batch) {
  validate(batch);
  std::vector<unsigned char> outcome(batch.trials, 0);
  const auto count = static_cast<std::int64_t>(batch.trials);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) outcome[static_cast<std::size_t>(i)] = run_trial(batch, static_cast<std::size_t>(i));
  const auto successes = static_cast<std::size_t>(std::count(outcome.begin(), outcome.end(), 1));
  return wilson_estimate(successes, batch.trials);
}

Estimate estimate_probability_serial(const TrialBatch& batch) {
  validate(batch);
  std::size_t successes = 0;
  for (std::size_t i = 0; i < batch.trials; ++i) successes += run_trial(batch, i) ? 1 : 0;
  return wilson_estimate(successes, batch.trials);
}

ThresholdResult bisect_threshold(const ProbeFunction& probe, double p_lo, double p_hi, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw InputError("relative tolerance must lie in (0, 1)");
  if (!(p_lo >= 0.0 && p_hi <= 1.0 && p_lo < p_hi)) throw InputError("bracket must satisfy 0 <= lo < hi <= 1");

  ThresholdResult result;
  auto measure = [&](double p) {
    const Estimate e = probe(p);
    result.probes.push_back({p, e});
    return e.fraction >= 0.5;
  };

  double lo = p_lo;
  double hi = p_hi;
  bool lo_above = measure(lo);
  bool hi_above = measure(hi);
  while (lo_above) {
    if (result.expansions == kMaxBracketExpansions || lo == 0.0)
      throw BracketError("percolation fraction stays at or above 1/2 down to p=" + std::to_string(lo));
    hi = lo;
    hi_above = true;
    lo /= 2.0;
    ++result.expansions;
    lo_above = measure(lo);
  }
  while (!hi_above) {
    if (result.expansions == kMaxBracketExpansions || hi >= 1.0)
      throw BracketError("percolation fraction stays below 1/2 up to p=" + std::to_string(hi));
    lo = hi;
    hi = std::min(1.0, 2.0 * hi);
    ++result.expansions;
    hi_above = measure(hi);
  }

  while ((hi - lo) / hi > rel_tol) {
    const double mid = 0.5 * (lo + hi);
    ++result.bisection_probes;
    if (measure(mid))
      hi = mid;
    else
      lo = mid;
  }
  result.lo = lo;
  result.hi = hi;
  result.p_hat = 0.5 * (lo + hi);
  return result;
}

ThresholdResult find_threshold(const ThresholdSearch& search) {
  if (search.n < static_cast<std::size_t>(search.pattern.vertex_count()))
    throw BracketError("n=" + std::to_string(search.n) + " is smaller than the pattern; nothing below p=1 percolates");
  if (search.trials_per_probe == 0) throw InputError("trials per probe must be positive");
  const ProbeFunction probe = [&](double p) {
    return estimate_probability({search.n, search.pattern, p, search.trials_per_probe, search.base_seed});
  };
  return bisect_threshold(probe, search.p_lo, search.p_hi, search.rel_tol);
}

std::pair<double, double> default_bracket(const Pattern& pattern, std::size_t n) {
  if (pattern.s >= 3 && n >= 3) {
    const double lower = lower_bound_p(pattern, n);
    return {lower / 4.0, std::min(1.0, 40.0 * lower)};
  }
  return {1e-4, 0.999};
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("slope fit needs matching samples, at least two");
  const double count = static_cast<double>(x.size());
  const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / count;
  const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mean_x) * (x[i] - mean_x);
    sxy += (x[i] - mean_x) * (y[i] - mean_y);
  }
  if (sxx == 0.0) throw InputError("slope fit needs at least two distinct x values");
  return sxy / sxx;
}

ScalingResult sweep_scaling(const Pattern& pattern, std::vector<std::size_t> n_list, std::size_t trials_per_probe,
                            double rel_tol, std::uint64_t base_seed) {
  std::sort(n_list.begin(), n_list.end());
  n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
  if (n_list.size() < 3) throw InputError("a scaling sweep needs at least three distinct n");
  for (std::size_t n : n_list)
    if (n < static_cast<std::size_t>(pattern.vertex_count()) + 1)
      throw InputError("every n in a sweep must be at least r + s + 1");

  ScalingResult result;
  result.pattern = pattern;
  result.theory_exponent = -1.0 / lambda(pattern).to_double();

  std::vector<double> log_n;
  std::vector<double> log_p;
  for (std::size_t n : n_list) {
    ScalingRow row;
    row.n = n;
    row.trials = trials_per_probe;
    if (pattern.s >= 3) row.lower_curve = lower_bound_p(pattern, n);
    if (n >= 16) row.upper_curve = upper_bound_curve(pattern, n, 1.0);
    const auto [lo, hi] = default_bracket(pattern, n);
    try {
      const ThresholdResult found = find_threshold({n, pattern, trials_per_probe, lo, hi, rel_tol, base_seed});
      row.p_hat = found.p_hat;
      row.ci_half_width = 0.5 * (found.hi - found.lo);
      log_n.push_back(std::log(static_cast<double>(n)));
      log_p.push_back(std::log(found.p_hat));
    } catch (const BracketError& err) {
      row.failure = err.what();
    }
    result.rows.push_back(std::move(row));
  }
  if (log_n.size() >= 3) result.fitted_exponent = least_squares_slope(log_n, log_p);
  return result;
}

}  // namespace kbp
