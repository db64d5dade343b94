#include "kbp/lemma_oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "kbp/errors.hpp"

namespace kbp {

namespace {

void require_proven_parts(const Pattern& pattern) {
  if (pattern.s < 3) throw DomainError("overlap inequalities need r, s >= 3");
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  unsigned __int128 c = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    c = c * (n - i) / (i + 1);
    if (c > kMaxOverlapInstances * 16ULL) return kMaxOverlapInstances * 16ULL;
  }
  return static_cast<std::uint64_t>(c);
}

void consider(OverlapReport& report, const OverlapInstance& instance, const Rational& slack) {
  ++report.instances;
  if (report.instances == 1 || slack < report.worst_slack || (slack == report.worst_slack && instance < report.worst)) {
    report.worst = instance;
    report.worst_slack = slack;
  }
}

// Calls fn(parts) for every ordered composition of at most `total` into
// `m` positive parts; `exact` restricts to compositions summing to `total`.
void for_each_composition(int total, int m, bool exact, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> parts(static_cast<std::size_t>(m), 1);
  std::function<void(int, int)> place = [&](int index, int used) {
    if (index == m) {
      if (!exact || used == total) fn(parts);
      return;
    }
    const int remaining_parts = m - index - 1;
    for (int x = 1; used + x + remaining_parts <= total; ++x) {
      parts[static_cast<std::size_t>(index)] = x;
      place(index + 1, used + x);
    }
  };
  place(0, 0);
}

}  // namespace

OverlapReport verify_single_overlap(const Pattern& pattern) {
  require_proven_parts(pattern);
  const int r = pattern.r;
  const int s = pattern.s;
  const Rational lam = lambda(pattern);

  OverlapReport report;
  report.pattern = pattern;
  report.inequality = "(P+Q-r-s)*lambda + rs - 1 - PQ >= 0";
  for (int p = 1; p <= r; ++p)
    for (int q = 1; q <= s; ++q) {
      if (p + q > r + s - 1) continue;
      const Rational value = lam * Rational(p + q - r - s) + Rational(r * s - 1 - p * q);
      consider(report, OverlapInstance{{p}, {q}}, value);
    }
  report.passed = report.worst_slack >= Rational(0);
  return report;
}

OverlapReport verify_multi_overlap(const Pattern& pattern, int m_max) {
  require_proven_parts(pattern);
  if (m_max < 2) throw InputError("m_max must be at least 2");
  const int r = pattern.r;
  const int s = pattern.s;

  std::uint64_t planned = 0;
  for (int m = 2; m <= m_max; ++m) {
    const auto mu = static_cast<std::uint64_t>(m);
    planned += binomial(static_cast<std::uint64_t>(r), mu) * binomial(static_cast<std::uint64_t>(s), mu) -
               binomial(static_cast<std::uint64_t>(r - 1), mu - 1) * binomial(static_cast<std::uint64_t>(s - 1), mu - 1);
    if (planned > kMaxOverlapInstances) throw RangeError("multi-overlap sweep exceeds the instance cap");
  }

  const Rational lam = lambda(pattern);
  OverlapReport report;
  report.pattern = pattern;
  report.inequality = "sum P_i Q_i <= lambda*(sum(P_i+Q_i) - 2m) + m";
  for (int m = 2; m <= m_max; ++m) {
    for_each_composition(r, m, false, [&](const std::vector<int>& ps) {
      const int sum_p = std::accumulate(ps.begin(), ps.end(), 0);
      for_each_composition(s, m, false, [&](const std::vector<int>& qs) {
        const int sum_q = std::accumulate(qs.begin(), qs.end(), 0);
        if (sum_p + sum_q > r + s - 1) return;
        int products = 0;
        for (int i = 0; i < m; ++i) products += ps[static_cast<std::size_t>(i)] * qs[static_cast<std::size_t>(i)];
        const Rational right = lam * Rational(sum_p + sum_q - 2 * m) + Rational(m);
        consider(report, OverlapInstance{ps, qs}, right - Rational(products));
      });
    });
  }
  report.passed = report.instances == 0 || report.worst_slack >= Rational(0);
  return report;
}

Case3Report verify_case3_boundary(const Pattern& pattern, int m_max) {
  require_proven_parts(pattern);
  if (m_max < 2) throw InputError("m_max must be at least 2");
  const int r = pattern.r;
  const int s = pattern.s;

  std::uint64_t planned = 0;
  for (int m = 2; m <= m_max; ++m) {
    const auto mu = static_cast<std::uint64_t>(m);
    planned += binomial(static_cast<std::uint64_t>(r - 1), mu - 1) * binomial(static_cast<std::uint64_t>(s - 1), mu - 1);
    if (planned > kMaxOverlapInstances) throw RangeError("case III sweep exceeds the instance cap");
  }

  const Rational lam = lambda(pattern);
  Case3Report report;
  report.pattern = pattern;
  for (int m = 2; m <= m_max && m <= s; ++m) {
    Case3Row row;
    row.m = m;
    row.product_ceiling = r * s - m;
    row.right_side = lam * Rational(r + s - 2 * m) + Rational(m);
    for_each_composition(r, m, true, [&](const std::vector<int>& ps) {
      for_each_composition(s, m, true, [&](const std::vector<int>& qs) {
        int products = 0;
        for (int i = 0; i < m; ++i) products += ps[static_cast<std::size_t>(i)] * qs[static_cast<std::size_t>(i)];
        row.max_product_sum = std::max(row.max_product_sum, products);
        ++row.instances;
      });
    });
    row.within_ceiling = row.max_product_sum <= row.product_ceiling;
    row.inequality_holds = Rational(row.max_product_sum) <= row.right_side;
    row.right_side_exceeds_ceiling = row.right_side >= Rational(row.product_ceiling);
    report.passed = report.passed && row.within_ceiling && row.inequality_holds;
    report.rows.push_back(row);
  }
  return report;
}

std::string to_string(SubgraphCount value) {
  if (value == 0) return "0";
  std::string digits;
  while (value != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

SubgraphCount count_dense_subgraphs(const Graph& g, Edge e, const Pattern& pattern, int m) {
  const std::size_t n = g.order();
  if (n > 12) throw RangeError("dense subgraph counting is exhaustive and limited to n <= 12");
  if (e.u >= n || e.v >= n || e.u == e.v) throw InputError("edge endpoints out of range");
  if (m < 0) throw InputError("edge count m must be nonnegative");

  std::vector<Vertex> others;
  for (Vertex x = 0; x < n; ++x)
    if (x != e.u && x != e.v) others.push_back(x);

  const Rational lam = lambda(pattern);
  SubgraphCount total = 0;
  for (std::uint32_t mask = 0; mask < (1U << others.size()); ++mask) {
    std::vector<Vertex> chosen{e.u, e.v};
    for (std::size_t i = 0; i < others.size(); ++i)
      if (mask & (1U << i)) chosen.push_back(others[i]);
    const auto size = static_cast<std::int64_t>(chosen.size());
    if (Rational(m) < lam * Rational(size - 2) + Rational(1)) continue;

    int inside = 0;
    for (std::size_t i = 0; i < chosen.size(); ++i)
      for (std::size_t j = i + 1; j < chosen.size(); ++j)
        if (g.has_edge(chosen[i], chosen[j])) ++inside;
    if (m > inside) continue;

    SubgraphCount ways = 1;
    for (int i = 0; i < m; ++i) ways = ways * static_cast<unsigned>(inside - i) / static_cast<unsigned>(i + 1);
    total += ways;
  }
  return total;
}

}  // namespace kbp
