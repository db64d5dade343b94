// Randomized closure properties over seeded G(n, p) instances.
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "kbp/closure.hpp"
#include "kbp/reference.hpp"

namespace {

using kbp::Graph;
using kbp::Pattern;

constexpr int kCases = 300;

struct Instance {
  std::size_t n;
  double p;
  std::uint64_t seed;
  Pattern pattern;
};

Instance draw(std::mt19937_64& rng) {
  static const Pattern patterns[] = {Pattern::make(2, 2), Pattern::make(3, 2), Pattern::make(3, 3), Pattern::make(4, 3)};
  Instance inst{8 + rng() % 17, 0.0, rng(), patterns[rng() % 4]};
  inst.p = 0.15 + 0.5 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return inst;
}

bool subgraph_of(const Graph& a, const Graph& b) { return b.contains(a); }

Graph close(const Graph& g, const Pattern& pattern) {
  kbp::ClosureOptions options;
  options.record_trace = false;
  options.stop_when_complete = false;
  return kbp::closure(g, pattern, options).final;
}

int check(const char* name, std::uint64_t stream, const std::function<bool(const Instance&)>& property) {
  std::mt19937_64 rng(stream);
  int failures = 0;
  for (int i = 0; i < kCases; ++i) {
    const Instance inst = draw(rng);
    if (!property(inst)) {
      ++failures;
      std::printf("  counterexample: n=%zu p=%.4f seed=%llu pattern=%s\n", inst.n, inst.p,
                  static_cast<unsigned long long>(inst.seed), inst.pattern.name().c_str());
    }
  }
  std::printf("%s %s (%d cases)\n", failures == 0 ? "PASS" : "FAIL", name, kCases);
  return failures;
}

}  // namespace

int main() {
  int failures = 0;

  failures += check("extensive: G is contained in its closure", 1, [](const Instance& inst) {
    const Graph g = kbp::sample_gnp({inst.n, inst.p, inst.seed});
    return subgraph_of(g, close(g, inst.pattern));
  });

  failures += check("idempotent: closing a closed graph adds nothing", 2, [](const Instance& inst) {
    const Graph once = close(kbp::sample_gnp({inst.n, inst.p, inst.seed}), inst.pattern);
    const kbp::ClosureResult twice = kbp::closure(once, inst.pattern);
    return twice.final == once && twice.trace.empty();
  });

  failures += check("monotone: G subset of G' implies closures nested", 3, [](const Instance& inst) {
    const Graph small = kbp::sample_gnp({inst.n, inst.p * 0.7, inst.seed});
    const Graph large = kbp::sample_gnp({inst.n, inst.p, inst.seed});
    return subgraph_of(small, large) && subgraph_of(close(small, inst.pattern), close(large, inst.pattern));
  });

  failures += check("order independent: shuffled worklists reach the same closure", 4, [](const Instance& inst) {
    const Graph g = kbp::sample_gnp({inst.n, inst.p, inst.seed});
    const Graph base = close(g, inst.pattern);
    for (std::uint64_t shuffle = 1; shuffle <= 3; ++shuffle) {
      kbp::ClosureOptions options;
      options.shuffle_seed = inst.seed ^ shuffle;
      const kbp::ClosureResult r = kbp::closure(g, inst.pattern, options);
      if (!(r.final == base) || r.verification_recoveries != 0) return false;
    }
    return true;
  });

  // The rescanning reference enumerates vertex subsets, so keep these graphs small.
  failures += check("incremental closure matches full rescans", 5, [](const Instance& inst) {
    const Graph g = kbp::sample_gnp({6 + inst.n % 6, inst.p, inst.seed});
    return close(g, inst.pattern) == kbp::reference::naive_closure(g, inst.pattern);
  });

  return failures == 0 ? 0 : 1;
}
