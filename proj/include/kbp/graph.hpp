#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace kbp {

using Vertex = std::uint32_t;
using Word = std::uint64_t;

inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

/// Number of vertex pairs of K_n.
constexpr std::size_t pair_count(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Undirected edge stored in canonical order u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  /// Canonicalizes the endpoint order. Throws InputError on a self-loop.
  static Edge make(Vertex a, Vertex b);

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Fixed-width bit set over the vertices 0..n-1.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : n_(n), words_(words_for(n), 0) {}
  VertexSet(std::size_t n, std::span<const Word> words);

  std::size_t universe() const { return n_; }
  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  bool contains(Vertex x) const { return (words_[x / kWordBits] >> (x % kWordBits)) & 1U; }
  void insert(Vertex x) { words_[x / kWordBits] |= Word{1} << (x % kWordBits); }
  void erase(Vertex x) { words_[x / kWordBits] &= ~(Word{1} << (x % kWordBits)); }
  std::size_t size() const;
  bool empty() const;

  VertexSet& operator&=(const VertexSet& other);
  VertexSet& operator|=(const VertexSet& other);
  VertexSet& operator&=(std::span<const Word> other);
  VertexSet& operator|=(std::span<const Word> other);

  std::vector<Vertex> to_vector() const;

  template <class F>
  void for_each(F&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        fn(static_cast<Vertex>(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits))));
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Word> words_;
};

/// Simple undirected graph on vertices 0..n-1 with one adjacency bit row per vertex.
///
/// Rows are padded to whole words; padding bits are always zero. A graph is
/// mutated by a single thread and may be shared read-only afterwards.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  static Graph complete(std::size_t n);

  std::size_t order() const { return n_; }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t words_per_row() const { return stride_; }
  bool is_complete() const { return edge_count_ == pair_count(n_); }

  bool has_edge(Vertex a, Vertex b) const;
  bool has_edge(Edge e) const { return has_edge(e.u, e.v); }

  /// Returns true if the edge was absent and has been inserted.
  bool add_edge(Edge e);
  bool add_edge(Vertex a, Vertex b) { return add_edge(Edge::make(a, b)); }
  bool remove_edge(Edge e);

  std::span<const Word> row(Vertex x) const { return {bits_.data() + x * stride_, stride_}; }
  std::size_t degree(Vertex x) const;
  VertexSet neighbors(Vertex x) const { return VertexSet(n_, row(x)); }
  VertexSet common_neighbors(Vertex a, Vertex b) const;

  /// All edges in canonical lexicographic order.
  std::vector<Edge> edges() const;
  /// Absent pairs in canonical lexicographic order.
  std::vector<Edge> missing_edges() const;

  /// True if every edge of `other` is present here. Orders must match.
  bool contains(const Graph& other) const;

  /// Full rescan of symmetry, loop-freedom, padding and the cached edge count.
  /// Throws InvariantViolation on failure.
  void check_invariants() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(Vertex x) const;

  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> bits_;
  std::size_t edge_count_ = 0;
};

/// Parameters of an Erdos-Renyi draw.
struct GnpSpec {
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
};

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit word.
constexpr double unit_interval(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

/// G(n, p) sample. One mt19937_64 draw per vertex pair in canonical order; the
/// pair is an edge iff unit_interval(draw) < p. Pure function of its arguments.
Graph sample_gnp(const GnpSpec& spec);

/// Edge-list text format: "n m" header then m lines "u v" with u < v.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace kbp
