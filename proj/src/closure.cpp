#include "kbp/closure.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <string>

#include "kbp/errors.hpp"

namespace kbp {

std::vector<Edge> CopyWitness::edges() const {
  std::vector<Edge> out;
  out.reserve(side_a.size() * side_b.size());
  for (Vertex a : side_a)
    for (Vertex b : side_b) out.push_back(Edge::make(a, b));
  std::sort(out.begin(), out.end());
  return out;
}

bool CopyWitness::contains_vertex(Vertex x) const {
  return std::binary_search(side_a.begin(), side_a.end(), x) || std::binary_search(side_b.begin(), side_b.end(), x);
}

namespace {

std::size_t popcount_and(std::span<const Word> x, std::span<const Word> y) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) total += static_cast<std::size_t>(std::popcount(x[i] & y[i]));
  return total;
}

// Searches for a copy of K_{r,s} completed by an absent pair.
//
// For the orientation with `a` in the r-part and `b` in the s-part, a copy is
// an (s-1)-subset T of N(a) together with r-1 vertices of
// N(b) ∩ ⋂_{t in T} N(t). Candidates for T are pre-filtered to vertices with
// at least r-1 common neighbours with b, and the running intersection is
// abandoned once it drops below r-1.
class CopyDetector {
 public:
  CopyDetector(const Graph& g, const Pattern& pattern)
      : g_(g),
        r_(static_cast<std::size_t>(pattern.r)),
        s_(static_cast<std::size_t>(pattern.s)),
        stride_(g.words_per_row()),
        inter_(s_ * stride_, 0),
        chosen_(s_ - 1, 0) {}

  bool exists(Edge e) {
    if (g_.order() < r_ + s_) return false;
    if (exists_oriented(e.u, e.v)) return true;
    return r_ != s_ && exists_oriented(e.v, e.u);
  }

  std::optional<CopyWitness> smallest(Edge e) {
    std::optional<CopyWitness> best;
    if (g_.order() < r_ + s_) return best;
    search_oriented(e.u, e.v, best);
    search_oriented(e.v, e.u, best);
    return best;
  }

 private:
  // Fills candidates_ and seeds the depth-0 intersection with N(b).
  bool prepare(Vertex a, Vertex b) {
    const auto nb = g_.row(b);
    std::copy(nb.begin(), nb.end(), inter_.begin());
    candidates_.clear();
    const auto na = g_.row(a);
    for (std::size_t w = 0; w < stride_; ++w) {
      Word bits = na[w];
      while (bits != 0) {
        const auto c = static_cast<Vertex>(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
        if (popcount_and(g_.row(c), nb) >= r_ - 1) candidates_.push_back(c);
      }
    }
    return candidates_.size() >= s_ - 1;
  }

  // Depth-first choice of T. With `best` null, stops at the first copy.
  bool dfs(std::size_t depth, std::size_t start, Vertex a, Vertex b, std::optional<CopyWitness>* best) {
    const std::size_t need = s_ - 1;
    const Word* current = inter_.data() + depth * stride_;
    for (std::size_t i = start; i + (need - depth) <= candidates_.size(); ++i) {
      const Vertex c = candidates_[i];
      Word* next = inter_.data() + (depth + 1) * stride_;
      const auto nc = g_.row(c);
      std::size_t size = 0;
      for (std::size_t w = 0; w < stride_; ++w) {
        next[w] = current[w] & nc[w];
        size += static_cast<std::size_t>(std::popcount(next[w]));
      }
      if (size < r_ - 1) continue;
      chosen_[depth] = c;
      if (depth + 1 == need) {
        if (best == nullptr) return true;
        record(a, b, next, *best);
      } else if (dfs(depth + 1, i + 1, a, b, best) && best == nullptr) {
        return true;
      }
    }
    return false;
  }

  void record(Vertex a, Vertex b, const Word* common, std::optional<CopyWitness>& best) {
    CopyWitness copy;
    copy.side_a.reserve(r_);
    copy.side_a.push_back(a);
    for (std::size_t w = 0; w < stride_ && copy.side_a.size() < r_; ++w) {
      Word bits = common[w];
      while (bits != 0 && copy.side_a.size() < r_) {
        copy.side_a.push_back(static_cast<Vertex>(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits))));
        bits &= bits - 1;
      }
    }
    copy.side_b.assign(chosen_.begin(), chosen_.end());
    copy.side_b.push_back(b);
    std::sort(copy.side_a.begin(), copy.side_a.end());
    std::sort(copy.side_b.begin(), copy.side_b.end());
    if (!best || copy < *best) best = std::move(copy);
  }

  bool exists_oriented(Vertex a, Vertex b) {
    if (!prepare(a, b)) return false;
    return dfs(0, 0, a, b, nullptr);
  }

  void search_oriented(Vertex a, Vertex b, std::optional<CopyWitness>& best) {
    if (!prepare(a, b)) return;
    dfs(0, 0, a, b, &best);
  }

  const Graph& g_;
  std::size_t r_;
  std::size_t s_;
  std::size_t stride_;
  std::vector<Word> inter_;
  std::vector<Vertex> chosen_;
  std::vector<Vertex> candidates_;
};

void require_absent(const Graph& g, Edge e) {
  if (g.has_edge(e)) throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is already present");
}

// Absent pairs waiting for a detection attempt, with a membership bit matrix
// (row u, bit v, for u < v) so that no pair is queued twice.
class Worklist {
 public:
  explicit Worklist(std::size_t n) : stride_(words_for(n)), queued_(n * stride_, 0) {}

  bool empty() const { return fifo_.empty(); }

  void push(Edge e) {
    Word& word = queued_[e.u * stride_ + e.v / kWordBits];
    const Word mask = Word{1} << (e.v % kWordBits);
    if (word & mask) return;
    word |= mask;
    fifo_.push_back(e);
  }

  Edge pop() {
    const Edge e = fifo_.front();
    fifo_.pop_front();
    queued_[e.u * stride_ + e.v / kWordBits] &= ~(Word{1} << (e.v % kWordBits));
    return e;
  }

  std::span<const Word> queued_row(Vertex u) const { return {queued_.data() + u * stride_, stride_}; }

 private:
  std::size_t stride_;
  std::vector<Word> queued_;
  std::deque<Edge> fifo_;
};

// Queues every absent pair that a copy through the new edge (u, v) could complete.
void requeue_around(const Graph& g, Edge added, Worklist& work) {
  const std::size_t n = g.order();
  const std::size_t stride = g.words_per_row();
  std::vector<Word> zone(g.row(added.u).begin(), g.row(added.u).end());
  for (std::size_t w = 0; w < stride; ++w) zone[w] |= g.row(added.v)[w];

  for (std::size_t wi = 0; wi < stride; ++wi) {
    Word outer = zone[wi];
    while (outer != 0) {
      const auto x = static_cast<Vertex>(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(outer)));
      outer &= outer - 1;
      const auto adj = g.row(x);
      const auto queued = work.queued_row(x);
      for (std::size_t k = x / kWordBits; k < stride; ++k) {
        Word open = zone[k] & ~adj[k] & ~queued[k];
        if (k == x / kWordBits) open &= ~Word{0} << (x % kWordBits) << 1;
        while (open != 0) {
          const auto y = static_cast<Vertex>(k * kWordBits + static_cast<std::size_t>(std::countr_zero(open)));
          open &= open - 1;
          work.push(Edge{x, y});
        }
      }
    }
  }
  // A copy may also be completed by a pair at u or v whose other endpoint sits
  // outside both neighbourhoods.
  for (Vertex end : {added.u, added.v}) {
    const auto adj = g.row(end);
    for (Vertex y = 0; y < n; ++y) {
      if (y == end || ((adj[y / kWordBits] >> (y % kWordBits)) & 1U)) continue;
      work.push(Edge::make(end, y));
    }
  }
}

}  // namespace

bool has_copy(const Graph& g, Edge e, const Pattern& pattern) {
  require_absent(g, e);
  return CopyDetector(g, pattern).exists(e);
}

std::optional<CopyWitness> completes_copy(const Graph& g, Edge e, const Pattern& pattern) {
  require_absent(g, e);
  return CopyDetector(g, pattern).smallest(e);
}

ClosureResult closure(const Graph& g, const Pattern& pattern, const ClosureOptions& options) {
  ClosureResult result;
  result.final = g;
  Graph& current = result.final;
  const std::size_t n = g.order();

  if (n >= static_cast<std::size_t>(pattern.vertex_count()) && !current.is_complete()) {
    CopyDetector detector(current, pattern);
    Worklist work(n);

    std::vector<Edge> initial = current.missing_edges();
    if (options.shuffle_seed) {
      std::mt19937_64 rng(*options.shuffle_seed);
      std::shuffle(initial.begin(), initial.end(), rng);
    }
    for (const Edge& e : initial) work.push(e);

    bool finished = false;
    while (!finished) {
      while (!work.empty()) {
        const Edge e = work.pop();
        if (current.has_edge(e)) continue;
        std::optional<CopyWitness> copy;
        if (options.record_trace) {
          copy = detector.smallest(e);
          if (!copy) continue;
        } else if (!detector.exists(e)) {
          continue;
        }
        current.add_edge(e);
        if (options.record_trace) result.trace.push_back({result.trace.size() + 1, e, std::move(*copy)});
        if (options.stop_when_complete && current.is_complete()) break;
        requeue_around(current, e, work);
      }
      if (options.stop_when_complete && current.is_complete()) break;

      finished = true;
      for (const Edge& e : current.missing_edges()) {
        if (detector.exists(e)) {
          work.push(e);
          ++result.verification_recoveries;
          finished = false;
        }
      }
    }
  }

  result.percolated = current.is_complete();
  return result;
}

bool percolates(const Graph& g, const Pattern& pattern) {
  const std::size_t n = g.order();
  if (g.is_complete()) return true;
  if (n < static_cast<std::size_t>(pattern.vertex_count())) return false;
  // Every vertex of a copy has at least s - 1 edges besides the completing one,
  // so a vertex of smaller degree never gains an edge.
  const auto min_degree = static_cast<std::size_t>(pattern.s - 1);
  for (Vertex x = 0; x < n; ++x)
    if (g.degree(x) < min_degree) return false;
  ClosureOptions options;
  options.record_trace = false;
  return closure(g, pattern, options).percolated;
}

void validate_trace(const Graph& initial, const ClosureResult& result, const Pattern& pattern) {
  Graph replay = initial;
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    const InfectionStep& step = result.trace[i];
    const std::string where = "trace step " + std::to_string(step.t);
    if (step.t != i + 1) throw InvariantViolation(where + ": step index out of sequence");
    if (replay.has_edge(step.edge)) throw InvariantViolation(where + ": edge already present");
    const CopyWitness& copy = step.copy;
    if (copy.side_a.size() != static_cast<std::size_t>(pattern.r) || copy.side_b.size() != static_cast<std::size_t>(pattern.s))
      throw InvariantViolation(where + ": copy has wrong part sizes");
    const bool u_in_a = std::binary_search(copy.side_a.begin(), copy.side_a.end(), step.edge.u);
    const bool v_in_a = std::binary_search(copy.side_a.begin(), copy.side_a.end(), step.edge.v);
    const bool u_in_b = std::binary_search(copy.side_b.begin(), copy.side_b.end(), step.edge.u);
    const bool v_in_b = std::binary_search(copy.side_b.begin(), copy.side_b.end(), step.edge.v);
    if (!((u_in_a && v_in_b) || (v_in_a && u_in_b)))
      throw InvariantViolation(where + ": infected edge does not cross the copy");
    for (Vertex a : copy.side_a)
      for (Vertex b : copy.side_b) {
        if (a == b) throw InvariantViolation(where + ": copy sides overlap");
        const Edge cross = Edge::make(a, b);
        if (cross != step.edge && !replay.has_edge(cross))
          throw InvariantViolation(where + ": copy edge missing before infection");
      }
    replay.add_edge(step.edge);
  }
  if (!(replay == result.final)) throw InvariantViolation("trace does not replay to the final graph");
}

}  // namespace kbp
