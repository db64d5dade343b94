#include "kbp/reference.hpp"

#include <algorithm>
#include <vector>

namespace kbp::reference {

namespace {

// Calls fn(subset) for every k-subset of pool in lexicographic order.
template <class F>
void for_each_subset(const std::vector<Vertex>& pool, std::size_t k, F&& fn) {
  if (k > pool.size()) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<Vertex> subset(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) subset[i] = pool[idx[i]];
    fn(subset);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == pool.size() - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::optional<CopyWitness> brute_force_copy(const Graph& g, Edge e, const Pattern& pattern) {
  const auto r = static_cast<std::size_t>(pattern.r);
  const auto s = static_cast<std::size_t>(pattern.s);
  std::optional<CopyWitness> best;
  if (g.order() < r + s) return best;

  std::vector<Vertex> all(g.order());
  for (Vertex x = 0; x < g.order(); ++x) all[x] = x;

  for_each_subset(all, r, [&](const std::vector<Vertex>& side_a) {
    const bool has_u = std::find(side_a.begin(), side_a.end(), e.u) != side_a.end();
    const bool has_v = std::find(side_a.begin(), side_a.end(), e.v) != side_a.end();
    if (has_u == has_v) return;
    std::vector<Vertex> rest;
    for (Vertex x : all)
      if (std::find(side_a.begin(), side_a.end(), x) == side_a.end()) rest.push_back(x);
    for_each_subset(rest, s, [&](const std::vector<Vertex>& side_b) {
      const Vertex other = has_u ? e.v : e.u;
      if (std::find(side_b.begin(), side_b.end(), other) == side_b.end()) return;
      for (Vertex a : side_a)
        for (Vertex b : side_b) {
          const Edge cross = Edge::make(a, b);
          if (cross != e && !g.has_edge(cross)) return;
        }
      CopyWitness copy{side_a, side_b};
      if (!best || copy < *best) best = copy;
    });
  });
  return best;
}

Graph naive_closure(const Graph& g, const Pattern& pattern) {
  Graph current = g;
  while (true) {
    std::vector<Edge> round;
    for (const Edge& e : current.missing_edges())
      if (brute_force_copy(current, e, pattern)) round.push_back(e);
    if (round.empty()) return current;
    for (const Edge& e : round) current.add_edge(e);
  }
}

}  // namespace kbp::reference
