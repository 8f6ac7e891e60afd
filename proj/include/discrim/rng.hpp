#pragma once
// Deterministic randomness for sampling translates and repair coefficients.
//
// std::mt19937_64 has a standardized output sequence, but the standard
// distributions do not, so bounded draws are done by hand (rejection + modulo)
// to make every run byte-for-byte reproducible across platforms and compilers.
// Independent tasks derive sub-generators as seed + stable task index, which
// keeps results independent of worker count and scheduling.
#include <cstdint>
#include <limits>
#include <random>

#include "discrim/rat.hpp"

namespace discrim {

struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  std::uint64_t next() { return eng(); }

  // Uniform integer in [lo, hi], unbiased via rejection sampling.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw error("shape", "empty range in uniform draw");
    std::uint64_t range =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next());  // full width
    std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % range);
  }

  // Uniform nonzero integer in [-bound, bound] \ {0}.
  std::int64_t nonzero(std::int64_t bound) {
    std::int64_t x;
    do {
      x = uniform(-bound, bound);
    } while (x == 0);
    return x;
  }
};

// Runtime knobs shared by every sampling routine.
struct RunConfig {
  std::uint64_t seed = 0;
  unsigned sample_budget = 32;          // attempts before giving up
  std::int64_t coordinate_bound = 1024; // initial coefficient range, doubled per retry
  unsigned worker_count = 0;            // 0 = library default
};

}  // namespace discrim
