#pragma once

#include <memory>
#include <vector>

#include "netfar/cactus_fps.hpp"
#include "netfar/network.hpp"
#include "netfar/point_sets.hpp"

namespace netfar {

/// The most specific farthest-point structure for a network's class.
class FarthestIndex {
 public:
  /// Throws ClassError for general networks.
  explicit FarthestIndex(Network net, CactusOptions options = {});
  FarthestIndex(FarthestIndex&&) noexcept;
  FarthestIndex& operator=(FarthestIndex&&) noexcept;
  ~FarthestIndex();

  NetworkClass network_class() const noexcept { return cls_; }
  const Network& network() const noexcept;

  double eccentricity(const NetworkPoint& q) const;
  FarthestSet farthest(const NetworkPoint& q) const;
  std::size_t count_farthest(const NetworkPoint& q) const;

  /// Lambdas per edge at which the eccentricity profile may bend.
  std::vector<std::vector<double>> profile_breakpoints() const;
  /// Per-edge samples at every breakpoint plus lambda 0 and 1, and
  /// `uniform` evenly spaced interior lambdas.
  std::vector<std::vector<ProfileSample>> profiles(std::size_t uniform = 0) const;
  CenterSet centers() const;

  const CactusFPS* cactus() const noexcept;

 private:
  struct Impl;
  NetworkClass cls_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace netfar
