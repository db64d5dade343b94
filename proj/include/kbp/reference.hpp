#pragma once

// Serial brute-force implementations. They share no code with the bit-parallel
// kernels and exist to check them; nothing in the CLI links against these.

#include <optional>

#include "kbp/closure.hpp"
#include "kbp/graph.hpp"
#include "kbp/pattern.hpp"

namespace kbp::reference {

/// Lexicographically smallest completed copy, found by enumerating every
/// r-subset and disjoint s-subset of the vertices. Exponential in n.
std::optional<CopyWitness> brute_force_copy(const Graph& g, Edge e, const Pattern& pattern);

/// Synchronous rounds G_{t+1} = G_t + {absent e completing a copy in G_t + e}
/// until nothing changes, using brute_force_copy for detection.
Graph naive_closure(const Graph& g, const Pattern& pattern);

}  // namespace kbp::reference
