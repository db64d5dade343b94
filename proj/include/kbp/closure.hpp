#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "kbp/graph.hpp"
#include "kbp/pattern.hpp"

namespace kbp {

/// A copy of K_{r,s} that an infected edge completes.
///
/// side_a holds the r-part and side_b the s-part, both sorted. The completing
/// edge has one endpoint in each side; every other cross pair was present
/// before the infection.
struct CopyWitness {
  std::vector<Vertex> side_a;
  std::vector<Vertex> side_b;

  /// The r*s cross edges in canonical order, including the completing edge.
  std::vector<Edge> edges() const;
  bool contains_vertex(Vertex x) const;

  friend auto operator<=>(const CopyWitness&, const CopyWitness&) = default;
};

struct InfectionStep {
  std::size_t t = 0;  // 1-based
  Edge edge;
  CopyWitness copy;
};

struct ClosureResult {
  Graph final;
  std::vector<InfectionStep> trace;
  bool percolated = false;
  /// Infections found by the terminal full verification pass rather than the
  /// worklist. Nonzero means the re-enqueue rule missed a candidate.
  std::size_t verification_recoveries = 0;
};

/// True iff adding `e` to `g` completes some copy of the pattern.
/// Precondition: e is absent (InputError otherwise).
bool has_copy(const Graph& g, Edge e, const Pattern& pattern);

/// The lexicographically smallest completed copy (by sorted side_a, then
/// sorted side_b, over both orientations of e), or nullopt.
/// Precondition: e is absent (InputError otherwise).
std::optional<CopyWitness> completes_copy(const Graph& g, Edge e, const Pattern& pattern);

struct ClosureOptions {
  /// Record each infection with its lexicographically smallest copy. Costs an
  /// exhaustive copy search per infection; off for bulk Monte Carlo.
  bool record_trace = true;
  /// Shuffle the initial worklist with this seed instead of canonical order.
  std::optional<std::uint64_t> shuffle_seed;
  /// Return as soon as the graph becomes complete.
  bool stop_when_complete = true;
};

/// Bootstrap closure of g under K_{r,s} via a FIFO worklist.
///
/// The worklist starts with every absent pair. After infecting (u, v) the
/// absent pairs inside {u, v} + N(u) + N(v), and all absent pairs at u or v,
/// are re-queued. A final full pass must find nothing new.
ClosureResult closure(const Graph& g, const Pattern& pattern, const ClosureOptions& options = {});

/// Whether the closure of g is complete. Skips trace recording and rejects
/// early when some vertex can never gain an edge.
bool percolates(const Graph& g, const Pattern& pattern);

/// Replays `result.trace` from `initial`, checking each step's copy against the
/// graph before the infection. Throws InvariantViolation on a mismatch.
void validate_trace(const Graph& initial, const ClosureResult& result, const Pattern& pattern);

}  // namespace kbp
