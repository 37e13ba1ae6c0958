#pragma once

#include <cstdint>
#include <random>

#include "netfar/network.hpp"

namespace netfar {

/// Seeded generator whose draws are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);
  /// Uniform real in [0, 1).
  double uniform_real();
  bool bernoulli(double p) { return uniform_real() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Random tree of bags glued at uniformly chosen vertices. Each bag is a
/// cycle of length 3..8 with probability `cycle_fraction`, otherwise a tree of
/// 1..8 edges. Weights are integers in 1..10. At least n vertices.
Network generate_random_cactus(std::size_t n, std::uint64_t seed, double cycle_fraction);

Network generate_random_tree(std::size_t n, std::uint64_t seed);
Network generate_random_cycle(std::size_t n, std::uint64_t seed);
/// Cycle of length 3..n/2 with random trees hung on it; a quarter of the
/// instances give one tree a heavy weight so a single branch dominates.
Network generate_random_unicyclic(std::size_t n, std::uint64_t seed);

/// Network of exactly the requested class (redraws with derived seeds).
/// Throws ClassError for General.
Network generate_network(NetworkClass cls, std::size_t n, std::uint64_t seed,
                         double cycle_fraction = 0.5);

/// Uniform edge, then uniform lambda.
NetworkPoint random_point(const Network& net, Rng& rng);

}  // namespace netfar
