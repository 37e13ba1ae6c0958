#include "netfar/point_sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace netfar {

FarthestSet make_farthest_set(const Network& net, double eccentricity,
                              std::vector<NetworkPoint> points) {
  std::vector<std::pair<std::pair<EdgeId, double>, NetworkPoint>> keyed;
  keyed.reserve(points.size());
  for (const NetworkPoint& p : points) keyed.push_back({net.display_form(p), p});
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  FarthestSet out;
  out.eccentricity = eccentricity;
  for (const auto& [key, p] : keyed) {
    if (!out.points.empty()) {
      const NetworkPoint& prev = out.points.back();
      if (same_position(net, prev, p)) continue;
    }
    out.points.push_back(p);
  }
  return out;
}

bool equivalent(const Network& net, const FarthestSet& a, const FarthestSet& b, double ecc_tol,
                double pos_tol) {
  if (std::abs(a.eccentricity - b.eccentricity) > ecc_tol) return false;
  if (a.points.size() != b.points.size()) return false;
  auto covered = [&](const FarthestSet& x, const FarthestSet& y) {
    return std::all_of(x.points.begin(), x.points.end(), [&](const NetworkPoint& p) {
      return std::any_of(y.points.begin(), y.points.end(),
                         [&](const NetworkPoint& q) { return same_position(net, p, q, pos_tol); });
    });
  };
  return covered(a, b) && covered(b, a);
}

CenterSet center_set_from_profiles(const Network& net,
                                   const std::vector<std::vector<ProfileSample>>& profiles,
                                   double tol) {
  CenterSet out;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& prof : profiles) {
    for (const auto& s : prof) best = std::min(best, s.eccentricity);
  }
  out.min_eccentricity = best;

  std::vector<VertexId> vertices;
  std::vector<char> closes_segment(net.vertex_count(), 0);
  for (EdgeId e = 0; e < profiles.size(); ++e) {
    const auto& prof = profiles[e];
    const Edge& ed = net.edge(e);
    std::size_t i = 0;
    while (i < prof.size()) {
      if (prof[i].eccentricity > best + tol) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < prof.size() && prof[j + 1].eccentricity <= best + tol) ++j;
      const double l0 = prof[i].lambda, l1 = prof[j].lambda;
      if ((l1 - l0) * ed.weight <= tol) {
        const double mid = 0.5 * (l0 + l1);
        if (mid * ed.weight <= tol) {
          vertices.push_back(ed.u);
        } else if ((1.0 - mid) * ed.weight <= tol) {
          vertices.push_back(ed.v);
        } else {
          out.segments.push_back({e, mid, mid});
        }
      } else {
        if (l0 * ed.weight <= tol) closes_segment[ed.u] = 1;
        if ((1.0 - l1) * ed.weight <= tol) closes_segment[ed.v] = 1;
        out.segments.push_back({e, l0, l1});
      }
      i = j + 1;
    }
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  for (VertexId v : vertices) {
    if (!closes_segment[v]) out.vertices.push_back(v);
  }
  std::sort(out.segments.begin(), out.segments.end(), [](const auto& a, const auto& b) {
    return std::tie(a.edge, a.lambda0) < std::tie(b.edge, b.lambda0);
  });
  return out;
}

bool equivalent(const Network& net, const CenterSet& a, const CenterSet& b, double ecc_tol,
                double pos_tol) {
  if (std::abs(a.min_eccentricity - b.min_eccentricity) > ecc_tol) return false;
  if (a.vertices != b.vertices || a.segments.size() != b.segments.size()) return false;
  for (std::size_t i = 0; i < a.segments.size(); ++i) {
    const auto& x = a.segments[i];
    const auto& y = b.segments[i];
    if (x.edge != y.edge) return false;
    const double w = net.edge(x.edge).weight;
    if (std::abs(x.lambda0 - y.lambda0) * w > pos_tol) return false;
    if (std::abs(x.lambda1 - y.lambda1) * w > pos_tol) return false;
  }
  return true;
}

}  // namespace netfar
