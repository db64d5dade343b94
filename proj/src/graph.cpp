#include "kbp/graph.hpp"

#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "kbp/errors.hpp"

namespace kbp {

Edge Edge::make(Vertex a, Vertex b) {
  if (a == b) throw InputError("self-loop on vertex " + std::to_string(a));
  return a < b ? Edge{a, b} : Edge{b, a};
}

VertexSet::VertexSet(std::size_t n, std::span<const Word> words) : n_(n), words_(words.begin(), words.end()) {}

std::size_t VertexSet::size() const {
  std::size_t total = 0;
  for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool VertexSet::empty() const {
  for (Word w : words_)
    if (w != 0) return false;
  return true;
}

VertexSet& VertexSet::operator&=(std::span<const Word> other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other[i];
  return *this;
}

VertexSet& VertexSet::operator|=(std::span<const Word> other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other[i];
  return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) { return *this &= other.words(); }
VertexSet& VertexSet::operator|=(const VertexSet& other) { return *this |= other.words(); }

std::vector<Vertex> VertexSet::to_vector() const {
  std::vector<Vertex> out;
  for_each([&](Vertex x) { out.push_back(x); });
  return out;
}

Graph::Graph(std::size_t n) : n_(n), stride_(words_for(n)), bits_(n * words_for(n), 0) {}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) g.add_edge(Edge{a, b});
  return g;
}

void Graph::check_vertex(Vertex x) const {
  if (x >= n_) throw InputError("vertex " + std::to_string(x) + " out of range for n=" + std::to_string(n_));
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  check_vertex(a);
  check_vertex(b);
  return (bits_[a * stride_ + b / kWordBits] >> (b % kWordBits)) & 1U;
}

bool Graph::add_edge(Edge e) {
  check_vertex(e.u);
  check_vertex(e.v);
  if (e.u == e.v) throw InputError("self-loop on vertex " + std::to_string(e.u));
  Word& forward = bits_[e.u * stride_ + e.v / kWordBits];
  const Word mask = Word{1} << (e.v % kWordBits);
  if (forward & mask) return false;
  forward |= mask;
  bits_[e.v * stride_ + e.u / kWordBits] |= Word{1} << (e.u % kWordBits);
  ++edge_count_;
  return true;
}

bool Graph::remove_edge(Edge e) {
  if (!has_edge(e)) return false;
  bits_[e.u * stride_ + e.v / kWordBits] &= ~(Word{1} << (e.v % kWordBits));
  bits_[e.v * stride_ + e.u / kWordBits] &= ~(Word{1} << (e.u % kWordBits));
  --edge_count_;
  return true;
}

std::size_t Graph::degree(Vertex x) const {
  check_vertex(x);
  std::size_t d = 0;
  for (Word w : row(x)) d += static_cast<std::size_t>(std::popcount(w));
  return d;
}

VertexSet Graph::common_neighbors(Vertex a, Vertex b) const {
  check_vertex(a);
  check_vertex(b);
  if (a == b) throw InputError("common_neighbors requires distinct vertices");
  VertexSet out(n_, row(a));
  out &= row(b);
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex a = 0; a < n_; ++a)
    for (Vertex b = a + 1; b < n_; ++b)
      if (has_edge(a, b)) out.push_back(Edge{a, b});
  return out;
}

std::vector<Edge> Graph::missing_edges() const {
  std::vector<Edge> out;
  out.reserve(pair_count(n_) - edge_count_);
  for (Vertex a = 0; a < n_; ++a)
    for (Vertex b = a + 1; b < n_; ++b)
      if (!has_edge(a, b)) out.push_back(Edge{a, b});
  return out;
}

bool Graph::contains(const Graph& other) const {
  if (other.n_ != n_) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if ((other.bits_[i] & ~bits_[i]) != 0) return false;
  return true;
}

void Graph::check_invariants() const {
  std::size_t population = 0;
  for (Vertex a = 0; a < n_; ++a) {
    if (has_edge(a, a)) throw InvariantViolation("self-loop at " + std::to_string(a));
    for (Vertex b = 0; b < n_; ++b)
      if (has_edge(a, b) != has_edge(b, a)) throw InvariantViolation("asymmetric adjacency");
    const auto r = row(a);
    if (n_ % kWordBits != 0 && (r.back() >> (n_ % kWordBits)) != 0)
      throw InvariantViolation("nonzero padding bits");
    for (Word w : r) population += static_cast<std::size_t>(std::popcount(w));
  }
  if (population != 2 * edge_count_) throw InvariantViolation("cached edge count out of sync");
}

Graph sample_gnp(const GnpSpec& spec) {
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  Graph g(spec.n);
  std::mt19937_64 rng(spec.seed);
  for (Vertex a = 0; a < spec.n; ++a)
    for (Vertex b = a + 1; b < spec.n; ++b)
      if (unit_interval(rng()) < spec.p) g.add_edge(Edge{a, b});
  return g;
}

namespace {

bool next_data_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

[[noreturn]] void parse_error(std::size_t lineno, const std::string& what) {
  throw InputError("edge list line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_data_line(in, line, lineno)) throw InputError("edge list is empty");

  long long n = -1;
  long long m = -1;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> m) || (header >> extra)) parse_error(lineno, "expected header 'n m'");
  }
  if (n <= 0) parse_error(lineno, "vertex count must be positive");
  if (m < 0 || static_cast<unsigned long long>(m) > pair_count(static_cast<std::size_t>(n)))
    parse_error(lineno, "edge count out of range");

  Graph g(static_cast<std::size_t>(n));
  for (long long i = 0; i < m; ++i) {
    if (!next_data_line(in, line, lineno)) throw InputError("edge list truncated: expected " + std::to_string(m) + " edges");
    std::istringstream fields(line);
    long long u = -1;
    long long v = -1;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra)) parse_error(lineno, "expected 'u v'");
    if (u < 0 || v < 0 || u >= n || v >= n) parse_error(lineno, "vertex out of range");
    if (u == v) parse_error(lineno, "self-loop");
    if (u > v) parse_error(lineno, "endpoints must satisfy u < v");
    if (!g.add_edge(Edge{static_cast<Vertex>(u), static_cast<Vertex>(v)})) parse_error(lineno, "duplicate edge");
  }
  if (next_data_line(in, line, lineno)) parse_error(lineno, "trailing data after " + std::to_string(m) + " edges");
  return g;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace kbp
