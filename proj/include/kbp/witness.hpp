#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kbp/closure.hpp"
#include "kbp/graph.hpp"
#include "kbp/pattern.hpp"

namespace kbp {

/// Witness edges WE(e) for one edge of the closure, and the witness graph
/// F(e) they span.
struct WitnessRecord {
  Edge edge;
  /// Sorted; a subset of the input graph's edges.
  std::vector<Edge> witness_edges;
  bool infected = false;
  /// 1-based infection step, 0 for input edges.
  std::size_t step = 0;
  /// Recursion depth: 0 for input edges, 1 + max over the copy's other edges otherwise.
  std::size_t depth = 0;

  std::size_t witness_edge_count() const { return witness_edges.size(); }
  /// Vertices of F(e): the endpoints of the witness edges.
  std::vector<Vertex> witness_vertices() const;
};

using WitnessMap = std::map<Edge, WitnessRecord>;

struct WitnessRun {
  ClosureResult closure;
  WitnessMap records;
};

/// Runs the closure with trace recording and assigns witness edges: an input
/// edge witnesses itself; an infected edge takes the union of the witness sets
/// of the other r*s - 1 edges of its recorded copy (only the copy's edges, not
/// other edges induced on its vertices).
WitnessRun run_witness_algorithm(const Graph& g, const Pattern& pattern);

struct StepStats {
  std::size_t t = 0;
  std::size_t e_bt = 0;   // edges of B_t
  std::size_t nu_bt = 0;  // vertices of B_t
  std::size_t l_t = 0;    // components of the copy-overlap graph
  std::size_t k_t = 0;    // sum over vertices of (components containing it - 1)

  friend bool operator==(const StepStats&, const StepStats&) = default;
};

/// Red-edge decomposition of one infected edge.
struct RedEdgeTrace {
  Edge target;
  /// Infected edges whose witness set lies inside the target's, in infection order; ends with target.
  std::vector<Edge> red_edges;
  std::vector<CopyWitness> copies;
  std::vector<StepStats> per_step;
  /// Union of the copies minus the red edges, sorted.
  std::vector<Edge> reconstructed_witness;
  /// WE(target) as assigned by the witness recursion.
  std::vector<Edge> recorded_witness;
};

/// Throws DomainError if target is not an infected edge of the run.
RedEdgeTrace red_edge_trace(const WitnessMap& records, const ClosureResult& run, Edge target);

enum class CheckStatus { passed, violated, out_of_proven_range, vacuous };

std::string to_string(CheckStatus status);

struct Violation {
  std::string check;
  std::string detail;
};

struct LemmaReport {
  Edge target;
  CheckStatus status = CheckStatus::passed;
  std::size_t red_edge_count = 0;
  std::vector<Violation> violations;
};

/// Checks the per-step edge inequality for B_t, connectivity of the final
/// overlap graph, the witness density bound e(F) >= lambda (v(F) - 2) + 1, and
/// that both constructions of F(target) agree. Skipped with
/// out_of_proven_range unless r, s >= 3 and r <= (s-2)^2 + s.
LemmaReport check_structural_lemmas(const RedEdgeTrace& trace, const Pattern& pattern);

struct SandwichReport {
  CheckStatus status = CheckStatus::vacuous;
  std::size_t level = 0;
  std::optional<Edge> witness;
  std::size_t witness_size = 0;
  std::size_t max_size = 0;
};

/// Looks for an edge f with L <= e(F(f)) <= r*s*L. Vacuous when no witness set reaches L.
SandwichReport check_size_sandwich(const WitnessMap& records, std::size_t level, const Pattern& pattern);

/// Per-record invariants: witness edges come from the input graph, input edges
/// witness themselves, F(e) spans both endpoints of e, and
/// e(F(e)) <= (rs - 1) (rs)^(depth - 1).
std::vector<Violation> check_witness_records(const WitnessMap& records, const Graph& input, const Pattern& pattern);

/// Everything checked for one seeded run.
struct RunReport {
  std::uint64_t seed = 0;
  Pattern pattern;
  std::size_t n = 0;
  bool percolated = false;
  std::size_t infected = 0;
  std::vector<LemmaReport> edges;
  SandwichReport sandwich;
  std::vector<Violation> record_violations;

  std::size_t violation_count() const;
};

/// Runs the witness algorithm on g and every check above, for every infected edge.
RunReport check_run(const Graph& g, const Pattern& pattern, std::uint64_t seed, std::size_t sandwich_level);

}  // namespace kbp
