#pragma once

#include <vector>

#include "netfar/network.hpp"

namespace netfar {

/// Farthest points of a query point, canonical and duplicate-free, ordered
/// by display form (canonical edge order, then lambda).
struct FarthestSet {
  double eccentricity = 0.0;
  std::vector<NetworkPoint> points;
};

FarthestSet make_farthest_set(const Network& net, double eccentricity,
                              std::vector<NetworkPoint> points);

bool equivalent(const Network& net, const FarthestSet& a, const FarthestSet& b,
                double ecc_tol = kTieTolerance, double pos_tol = kTieTolerance);

/// Closed interval [lambda0, lambda1] inside one edge; lambda0 == lambda1 is
/// a single interior point.
struct CenterSegment {
  EdgeId edge = kInvalidId;
  double lambda0 = 0.0;
  double lambda1 = 0.0;
};

/// All points of minimum eccentricity. Centers that are isolated vertices
/// are listed in `vertices`; a vertex that closes a segment is not repeated.
struct CenterSet {
  double min_eccentricity = 0.0;
  std::vector<VertexId> vertices;
  std::vector<CenterSegment> segments;
};

/// Eccentricity at a lambda of one edge. Between consecutive samples of an
/// edge the profile must be linear.
struct ProfileSample {
  double lambda = 0.0;
  double eccentricity = 0.0;
};

/// Builds the canonical center set from per-edge profiles whose samples
/// include every breakpoint as well as lambda 0 and 1.
CenterSet center_set_from_profiles(const Network& net,
                                   const std::vector<std::vector<ProfileSample>>& profiles,
                                   double tol = kTieTolerance);

bool equivalent(const Network& net, const CenterSet& a, const CenterSet& b,
                double ecc_tol = kTieTolerance, double pos_tol = 1e-5);

}  // namespace netfar
