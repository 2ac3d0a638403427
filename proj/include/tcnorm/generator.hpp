// Seed-deterministic random instances. The generator owns its RNG so output
// bytes do not depend on the standard library's distribution details.
#pragma once

#include <cstdint>
#include <string>

#include "tcnorm/chains.hpp"
#include "tcnorm/graph.hpp"

namespace tcnorm {

// splitmix64: tiny, well-mixed, and stable across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound). bound must be positive.
  long below(long bound) { return static_cast<long>(next() % static_cast<std::uint64_t>(bound)); }

  // Uniform in [lo, hi], inclusive.
  long range(long lo, long hi) { return lo + below(hi - lo + 1); }

 private:
  std::uint64_t state_;
};

// Positive rational with numerator and denominator in [1, max_part].
Rat gen_length(Rng& rng, long max_part = 8);

// Vertices named v0..v{n-1}.
MetricGraph gen_tree(int n, Rng& rng);
MetricGraph gen_cycle(int n, Rng& rng);
MetricGraph gen_lollipop(int n, Rng& rng);

// Random tree plus `extra_edges` distinct chords (silently capped by the
// complete graph).
MetricGraph gen_connected(int n, int extra_edges, Rng& rng);

// Integer masses in [-range, range]; the last vertex absorbs the negative
// of the running sum so the total is zero by construction.
MassFunction gen_masses(int n, int range, Rng& rng);

struct GenParams {
  std::string family;  // tree | cycle | random | lollipop
  int n = 0;
  std::uint64_t seed = 0;
  int mass_range = 5;
};

// Full instance as JSON text (graph + masses), deterministic per seed.
std::string generate_instance_text(const GenParams& params);

}  // namespace tcnorm
