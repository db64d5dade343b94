#include "kbp/witness.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <sstream>

#include "kbp/errors.hpp"

namespace kbp {

namespace {

std::string edge_str(Edge e) { return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")"; }

class UnionFind {
 public:
  std::size_t add() {
    parent_.push_back(parent_.size());
    rank_.push_back(0);
    ++components_;
    return parent_.size() - 1;
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    parent_[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
    --components_;
  }

  std::size_t components() const { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
  std::size_t components_ = 0;
};

std::vector<Vertex> endpoints(const std::vector<Edge>& edges) {
  std::vector<Vertex> out;
  out.reserve(2 * edges.size());
  for (const Edge& e : edges) {
    out.push_back(e.u);
    out.push_back(e.v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::passed: return "passed";
    case CheckStatus::violated: return "violated";
    case CheckStatus::out_of_proven_range: return "out of proven range";
    case CheckStatus::vacuous: return "vacuous";
  }
  return "unknown";
}

std::vector<Vertex> WitnessRecord::witness_vertices() const { return endpoints(witness_edges); }

WitnessRun run_witness_algorithm(const Graph& g, const Pattern& pattern) {
  WitnessRun run;
  run.closure = closure(g, pattern, ClosureOptions{.record_trace = true, .shuffle_seed = {}, .stop_when_complete = true});

  for (const Edge& e : g.edges()) run.records.emplace(e, WitnessRecord{e, {e}, false, 0, 0});

  for (const InfectionStep& step : run.closure.trace) {
    WitnessRecord record{step.edge, {}, true, step.t, 0};
    std::size_t deepest = 0;
    for (const Edge& other : step.copy.edges()) {
      if (other == step.edge) continue;
      const WitnessRecord& source = run.records.at(other);
      deepest = std::max(deepest, source.depth);
      std::vector<Edge> merged;
      merged.reserve(record.witness_edges.size() + source.witness_edges.size());
      std::set_union(record.witness_edges.begin(), record.witness_edges.end(), source.witness_edges.begin(),
                     source.witness_edges.end(), std::back_inserter(merged));
      record.witness_edges = std::move(merged);
    }
    record.depth = deepest + 1;
    run.records.emplace(step.edge, std::move(record));
  }
  return run;
}

RedEdgeTrace red_edge_trace(const WitnessMap& records, const ClosureResult& run, Edge target) {
  const auto found = records.find(target);
  if (found == records.end() || !found->second.infected)
    throw DomainError("edge " + edge_str(target) + " was not infected in this run");
  const WitnessRecord& target_record = found->second;
  const auto& target_we = target_record.witness_edges;

  RedEdgeTrace trace;
  trace.target = target;
  trace.recorded_witness = target_we;

  for (std::size_t i = 0; i < target_record.step; ++i) {
    const InfectionStep& step = run.trace.at(i);
    const auto& we = records.at(step.edge).witness_edges;
    if (std::binary_search(target_we.begin(), target_we.end(), step.edge)) continue;
    if (!std::includes(target_we.begin(), target_we.end(), we.begin(), we.end())) continue;
    trace.red_edges.push_back(step.edge);
    trace.copies.push_back(step.copy);
  }
  if (trace.red_edges.empty() || trace.red_edges.back() != target)
    throw InvariantViolation("red edge sequence for " + edge_str(target) + " does not end at the target");

  const std::size_t n = run.final.order();
  std::vector<std::uint8_t> in_union(n * n, 0);
  std::vector<std::uint8_t> vertex_seen(n, 0);
  std::vector<std::vector<std::size_t>> copies_at_edge(n * n);
  std::vector<std::vector<std::size_t>> copies_at_vertex(n);
  std::vector<Vertex> union_vertices;
  std::size_t union_edges = 0;
  UnionFind overlap;

  for (std::size_t j = 0; j < trace.copies.size(); ++j) {
    const CopyWitness& copy = trace.copies[j];
    const Edge red = trace.red_edges[j];
    if (in_union[red.u * n + red.v])
      throw InvariantViolation("red edge " + edge_str(red) + " already lies in an earlier copy");

    const std::size_t node = overlap.add();
    for (const Edge& e : copy.edges()) {
      const std::size_t key = e.u * n + e.v;
      for (std::size_t other : copies_at_edge[key]) overlap.unite(node, other);
      copies_at_edge[key].push_back(node);
      if (!in_union[key]) {
        in_union[key] = 1;
        ++union_edges;
      }
    }
    for (const auto* side : {&copy.side_a, &copy.side_b})
      for (Vertex x : *side) {
        copies_at_vertex[x].push_back(node);
        if (!vertex_seen[x]) {
          vertex_seen[x] = 1;
          union_vertices.push_back(x);
        }
      }

    std::size_t k = 0;
    std::vector<std::size_t> roots;
    for (Vertex x : union_vertices) {
      roots.clear();
      for (std::size_t c : copies_at_vertex[x]) roots.push_back(overlap.find(c));
      std::sort(roots.begin(), roots.end());
      k += static_cast<std::size_t>(std::unique(roots.begin(), roots.end()) - roots.begin()) - 1;
    }
    trace.per_step.push_back({j + 1, union_edges - (j + 1), union_vertices.size(), overlap.components(), k});
  }

  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (in_union[a * n + b]) trace.reconstructed_witness.push_back(Edge{a, b});
  std::vector<Edge> reds = trace.red_edges;
  std::sort(reds.begin(), reds.end());
  std::vector<Edge> kept;
  std::set_difference(trace.reconstructed_witness.begin(), trace.reconstructed_witness.end(), reds.begin(), reds.end(),
                      std::back_inserter(kept));
  trace.reconstructed_witness = std::move(kept);
  return trace;
}

LemmaReport check_structural_lemmas(const RedEdgeTrace& trace, const Pattern& pattern) {
  LemmaReport report;
  report.target = trace.target;
  report.red_edge_count = trace.red_edges.size();
  if (!in_witness_lemma_range(pattern)) {
    report.status = CheckStatus::out_of_proven_range;
    return report;
  }

  const Rational lam = lambda(pattern);
  const std::int64_t rs = pattern.edge_count();
  const std::int64_t r_plus_s = pattern.vertex_count();

  for (const StepStats& st : trace.per_step) {
    const auto nu = static_cast<std::int64_t>(st.nu_bt);
    const auto k = static_cast<std::int64_t>(st.k_t);
    const auto l = static_cast<std::int64_t>(st.l_t);
    const Rational bound = lam * Rational(nu + k - l * r_plus_s) + Rational(l * (rs - 1));
    if (Rational(static_cast<std::int64_t>(st.e_bt)) < bound) {
      std::ostringstream detail;
      detail << "t=" << st.t << ": e(B_t)=" << st.e_bt << " < " << bound.to_string() << " (nu=" << st.nu_bt
             << ", k=" << st.k_t << ", l=" << st.l_t << ")";
      report.violations.push_back({"step_inequality", detail.str()});
    }
  }

  if (!trace.per_step.empty()) {
    const StepStats& last = trace.per_step.back();
    if (last.l_t != 1 || last.k_t != 0)
      report.violations.push_back({"connectivity", "final overlap graph has l=" + std::to_string(last.l_t) +
                                                       ", k=" + std::to_string(last.k_t)});
  }

  const auto f_edges = static_cast<std::int64_t>(trace.reconstructed_witness.size());
  const auto f_vertices = static_cast<std::int64_t>(endpoints(trace.reconstructed_witness).size());
  const Rational density_bound = lam * Rational(f_vertices - 2) + Rational(1);
  if (Rational(f_edges) < density_bound)
    report.violations.push_back({"witness_density", "e(F)=" + std::to_string(f_edges) + " < " + density_bound.to_string() +
                                                        " with v(F)=" + std::to_string(f_vertices)});

  if (trace.reconstructed_witness != trace.recorded_witness)
    report.violations.push_back({"witness_agreement", "copies minus red edges differ from WE(target): " +
                                                          std::to_string(trace.reconstructed_witness.size()) + " vs " +
                                                          std::to_string(trace.recorded_witness.size()) + " edges"});

  report.status = report.violations.empty() ? CheckStatus::passed : CheckStatus::violated;
  return report;
}

SandwichReport check_size_sandwich(const WitnessMap& records, std::size_t level, const Pattern& pattern) {
  SandwichReport report;
  report.level = level;
  for (const auto& [edge, record] : records) report.max_size = std::max(report.max_size, record.witness_edge_count());
  if (report.max_size < level) {
    report.status = CheckStatus::vacuous;
    return report;
  }
  const std::size_t ceiling = static_cast<std::size_t>(pattern.edge_count()) * level;
  for (const auto& [edge, record] : records) {
    const std::size_t size = record.witness_edge_count();
    if (size < level || size > ceiling) continue;
    if (!report.witness || size < report.witness_size) {
      report.witness = edge;
      report.witness_size = size;
    }
  }
  report.status = report.witness ? CheckStatus::passed : CheckStatus::violated;
  return report;
}

std::vector<Violation> check_witness_records(const WitnessMap& records, const Graph& input, const Pattern& pattern) {
  std::vector<Violation> out;
  const auto rs = static_cast<double>(pattern.edge_count());
  for (const auto& [edge, record] : records) {
    const std::string where = edge_str(edge) + ": ";
    if (!record.infected) {
      if (record.witness_edges != std::vector<Edge>{edge}) out.push_back({"input_edge_witness", where + "WE(e) != {e}"});
      continue;
    }
    for (const Edge& w : record.witness_edges)
      if (!input.has_edge(w)) {
        out.push_back({"witness_subset", where + "witness edge " + edge_str(w) + " not in the input graph"});
        break;
      }
    const auto vertices = record.witness_vertices();
    if (!std::binary_search(vertices.begin(), vertices.end(), edge.u) ||
        !std::binary_search(vertices.begin(), vertices.end(), edge.v))
      out.push_back({"witness_endpoints", where + "F(e) misses an endpoint of e"});
    // (rs - 1) * rs^(depth - 1), compared in floating point only as a sanity bound.
    const double ceiling = (rs - 1.0) * std::pow(rs, static_cast<double>(record.depth) - 1.0);
    if (static_cast<double>(record.witness_edge_count()) > ceiling)
      out.push_back({"depth_growth", where + "e(F)=" + std::to_string(record.witness_edge_count()) +
                                         " exceeds the depth-" + std::to_string(record.depth) + " bound"});
  }
  return out;
}

std::size_t RunReport::violation_count() const {
  std::size_t total = record_violations.size();
  for (const LemmaReport& e : edges) total += e.violations.size();
  if (sandwich.status == CheckStatus::violated) ++total;
  return total;
}

RunReport check_run(const Graph& g, const Pattern& pattern, std::uint64_t seed, std::size_t sandwich_level) {
  RunReport report;
  report.seed = seed;
  report.pattern = pattern;
  report.n = g.order();

  const WitnessRun run = run_witness_algorithm(g, pattern);
  validate_trace(g, run.closure, pattern);
  report.percolated = run.closure.percolated;
  report.infected = run.closure.trace.size();
  report.record_violations = check_witness_records(run.records, g, pattern);
  for (const InfectionStep& step : run.closure.trace)
    report.edges.push_back(check_structural_lemmas(red_edge_trace(run.records, run.closure, step.edge), pattern));
  report.sandwich = check_size_sandwich(run.records, sandwich_level, pattern);
  return report;
}

}  // namespace kbp
