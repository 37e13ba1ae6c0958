#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netfar/cactus_fps.hpp"
#include "netfar/index.hpp"
#include "netfar/network.hpp"

namespace netfar::verify {

/// Vertices, edge midpoints, and `interior` random interior points per edge.
std::vector<NetworkPoint> probe_points(const Network& net, std::size_t interior, std::uint64_t seed);

/// Compares eccentricity, farthest set and count at every probe point, and
/// optionally the center set, against the oracle. Returns a description of
/// the first mismatch.
std::optional<std::string> check_instance(const FarthestIndex& index, const std::vector<NetworkPoint>& probes,
                                          bool centers);

/// Oracle eccentricity of the hinge of `link` in bcut(B, h), or in
/// co-bcut(B, h) when `co_bag_cut` is set.
double cut_eccentricity(const CactusFPS& fps, std::uint32_t link, bool co_bag_cut);

/// Sibling maxima, hinge records, shortcuts, and every arc value against
/// the oracle on the cut sub-networks.
std::optional<std::string> audit_arcs(const CactusFPS& fps);

/// Bags visited by a farthest-point query against the oracle farthest set:
/// each visited bag holds a farthest point or is where paths to farthest
/// points split, and there are at most 2r + 1 of them for r bags holding
/// farthest points.
std::optional<std::string> audit_traversal(const CactusFPS& fps, const FarthestSet& truth,
                                           const std::vector<std::uint32_t>& visited);

/// Number of bags holding at least one point of `set`.
std::size_t bags_with_points(const CactusFPS& fps, const FarthestSet& set);

struct CheckOptions {
  NetworkClass cls = NetworkClass::Cactus;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t min_n = 8;
  std::size_t max_n = 120;
  std::size_t interior = 2;
  bool centers = true;
  double cycle_fraction = 0.5;
  CactusOptions cactus;
};

struct CheckFailure {
  std::size_t index = 0;
  std::uint64_t instance_seed = 0;
  std::size_t n = 0;
  std::string what;
};

struct CheckReport {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<CheckFailure> failures;
};

/// Seed and size of trial `index`; identical for identical options.
std::uint64_t instance_seed(std::uint64_t seed, std::size_t index);
std::size_t instance_size(const CheckOptions& options, std::size_t index);
Network instance(const CheckOptions& options, std::size_t index);

CheckReport run_check(const CheckOptions& options);

}  // namespace netfar::verify
