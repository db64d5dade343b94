#include "kbp/pattern.hpp"

#include <cmath>
#include <numbers>

#include "kbp/errors.hpp"

namespace kbp {

Pattern Pattern::make(int a, int b) {
  Pattern p{std::max(a, b), std::min(a, b)};
  if (p.s < 2) throw InputError("pattern parts must both be at least 2, got (" + std::to_string(a) + "," + std::to_string(b) + ")");
  return p;
}

Rational lambda(int r, int s) { return Rational(static_cast<std::int64_t>(r) * s - 2, r + s - 2); }

Rational lambda(const Pattern& pattern) { return lambda(pattern.r, pattern.s); }

bool closed_form_applies(const Pattern& pattern) { return pattern.s >= 3; }

bool is_balanced_closed_form(const Pattern& pattern) {
  const int r = pattern.r;
  const int s = pattern.s;
  return r >= 4 && s >= 3 && r <= (s - 2) * (s - 2) + s;
}

bool in_witness_lemma_range(const Pattern& pattern) {
  return pattern.s >= 3 && pattern.r <= (pattern.s - 2) * (pattern.s - 2) + pattern.s;
}

BalancednessReport is_balanced_brute_force(const Pattern& pattern) {
  const int r = pattern.r;
  const int s = pattern.s;
  if (r > 64) throw RangeError("brute-force balancedness is limited to parts of size <= 64");

  BalancednessReport report;
  report.density_condition_holds = r * s >= 2 * (r + s) - 2;

  bool have_worst = false;
  for (int p = 0; p <= r; ++p) {
    for (int q = 0; q <= s; ++q) {
      if ((p == r && q == s) || p + q < 3) continue;
      // K_{p,q} has the most edges among subgraphs on these part sizes.
      const Rational ratio(static_cast<std::int64_t>(p) * q - 1, p + q - 2);
      if (!have_worst || ratio > report.worst_ratio) {
        report.worst_ratio = ratio;
        report.worst_subgraph = {p, q};
        have_worst = true;
      }
    }
  }
  // Spanning proper subgraphs: K_{r,s} minus one edge is the densest.
  const Rational spanning(static_cast<std::int64_t>(r) * s - 2, r + s - 2);
  if (!have_worst || spanning > report.worst_ratio) {
    report.worst_ratio = spanning;
    report.worst_subgraph = {r, s};
    report.worst_is_edge_deleted = true;
  }

  report.balanced = report.density_condition_holds && report.worst_ratio <= lambda(pattern);
  return report;
}

namespace {

double log_n(std::size_t n) { return std::log(static_cast<double>(n)); }

}  // namespace

double lower_bound_p(const Pattern& pattern, std::size_t n) {
  if (pattern.s < 3) throw DomainError("lower bound is proven only for r, s >= 3");
  if (n < 3) throw DomainError("lower bound needs n >= 3");
  const double lam = lambda(pattern).to_double();
  const double nd = static_cast<double>(n);
  return lam * lam / (std::numbers::e * pattern.r * pattern.s * log_n(n) * std::pow(nd, 1.0 / lam));
}

double upper_bound_curve(const Pattern& pattern, std::size_t n, double constant) {
  if (n < 16) throw DomainError("upper bound curve needs n >= 16");
  if (!(constant > 0.0)) throw InputError("bound constant must be positive");
  const double lam = lambda(pattern).to_double();
  const double ln = log_n(n);
  return constant * std::pow(ln / std::log(ln), 2.0 / lam) * std::pow(static_cast<double>(n), -1.0 / lam);
}

double upper_bound_p(const Pattern& pattern, std::size_t n, double constant) {
  if (!is_balanced_closed_form(pattern))
    throw DomainError(pattern.name() + " is not balanced; the upper bound does not apply");
  return upper_bound_curve(pattern, n, constant);
}

double theorem_lower_curve(const Pattern& pattern, std::size_t n, double constant) {
  if (n < 3) throw DomainError("lower bound curve needs n >= 3");
  if (!(constant > 0.0)) throw InputError("bound constant must be positive");
  const double lam = lambda(pattern).to_double();
  return constant / log_n(n) * std::pow(static_cast<double>(n), -1.0 / lam);
}

GeneralLowerBound general_lower_bound_p(const Pattern& pattern, std::size_t n) {
  if (pattern.s < 3) throw DomainError("general lower bound is proven only for r, s >= 3");
  if (n < 3) throw DomainError("general lower bound needs n >= 3");
  const int s = pattern.s;
  // lambda is nondecreasing in both arguments, so the cap on r' is the optimum.
  const Pattern reduced{std::min(pattern.r, (s - 2) * (s - 2) + s), s};
  const double lam = lambda(reduced).to_double();
  const double value = lam * lam / (std::numbers::e * log_n(n)) * std::pow(static_cast<double>(n), -1.0 / lam);
  return {value, reduced};
}

}  // namespace kbp
