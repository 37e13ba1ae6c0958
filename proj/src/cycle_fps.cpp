#include "netfar/cycle_fps.hpp"

#include <algorithm>
#include <cmath>

#include "netfar/instrumentation.hpp"

namespace netfar {

CycleLayout cycle_layout(const Network& cycle) {
  const std::size_t n = cycle.vertex_count();
  if (cycle.edge_count() != n) throw ClassError("network is not a cycle");
  for (VertexId v = 0; v < n; ++v) {
    if (cycle.degree(v) != 2) throw ClassError("network is not a cycle");
  }
  CycleLayout layout;
  auto inc = cycle.incident(0);
  Incidence step = inc[0].neighbor < inc[1].neighbor ? inc[0] : inc[1];
  VertexId at = 0;
  for (std::size_t i = 0; i < n; ++i) {
    metrics::build_step();
    layout.vertices.push_back(at);
    layout.edges.push_back(step.edge);
    const VertexId next = step.neighbor;
    auto nx = cycle.incident(next);
    step = nx[0].edge == step.edge ? nx[1] : nx[0];
    at = next;
  }
  if (at != 0) throw ClassError("network is not a cycle");
  return layout;
}

CycleFPS::CycleFPS(const Network& net, CycleLayout layout) : layout_(std::move(layout)) {
  const std::size_t k = layout_.vertices.size();
  weight_.resize(k);
  forward_.resize(k);
  edge_u_.resize(k);
  edge_v_.resize(k);
  prefix_.assign(k + 1, 0.0);
  edge_slot_.assign(net.edge_count(), kInvalidId);
  vertex_slot_.assign(net.vertex_count(), kInvalidId);
  for (std::size_t i = 0; i < k; ++i) {
    metrics::build_step();
    const Edge& e = net.edge(layout_.edges[i]);
    weight_[i] = e.weight;
    forward_[i] = e.u == layout_.vertices[i];
    edge_u_[i] = e.u;
    edge_v_[i] = e.v;
    prefix_[i + 1] = prefix_[i] + e.weight;
    edge_slot_[layout_.edges[i]] = i;
    vertex_slot_[layout_.vertices[i]] = i;
  }
  total_ = prefix_[k];
  const double half = 0.5 * total_;

  // Fold every vertex onto [0, half); positions within the tolerance of
  // half are folded to the antipode of the origin.
  struct Folded {
    double x;
    std::size_t vertex;
    bool upper;
  };
  std::vector<Folded> folded;
  folded.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    metrics::build_step();
    const double t = prefix_[i];
    if (t >= half - kTieTolerance) {
      folded.push_back({t - half, i, true});
    } else {
      folded.push_back({t, i, false});
    }
  }
  // The lower-half vertices are already sorted, and so are the upper-half
  // ones: a linear merge keeps the build O(k).
  std::vector<Folded> merged(k);
  auto mid = std::partition_point(folded.begin(), folded.end(), [](const Folded& f) { return !f.upper; });
  std::merge(folded.begin(), mid, mid, folded.end(), merged.begin(),
             [](const Folded& a, const Folded& b) { return a.x < b.x; });

  std::vector<double> lower_pos, upper_pos;
  for (std::size_t i = 0; i < k;) {
    std::size_t lower = kInvalidId, upper = kInvalidId;
    const double anchor = merged[i].x;
    std::size_t j = i;
    for (; j < k && merged[j].x - anchor <= kTieTolerance; ++j) {
      metrics::build_step();
      std::size_t& slot = merged[j].upper ? upper : lower;
      if (slot == kInvalidId) slot = merged[j].vertex;
    }
    lower_pos.push_back(lower != kInvalidId ? prefix_[lower] : prefix_[upper] - half);
    upper_pos.push_back(upper != kInvalidId ? prefix_[upper] : prefix_[lower] + half);
    i = j;
  }
  const std::size_t h = lower_pos.size();
  breaks_.resize(2 * h);
  for (std::size_t i = 0; i < h; ++i) {
    breaks_[i].position = lower_pos[i];
    breaks_[i + h].position = upper_pos[i];
  }
  // Edge holding each sub-edge: advance through the layout alongside the breakpoints.
  std::size_t edge = 0;
  for (std::size_t b = 0; b < breaks_.size(); ++b) {
    metrics::build_step();
    const double next = b + 1 < breaks_.size() ? breaks_[b + 1].position : total_;
    const double mid_pos = 0.5 * (breaks_[b].position + next);
    while (edge + 1 < k && prefix_[edge + 1] <= mid_pos) ++edge;
    breaks_[b].edge = edge;
  }
}

std::optional<double> CycleFPS::position_of(const NetworkPoint& p) const {
  if (p.is_vertex()) {
    if (p.vertex >= vertex_slot_.size() || vertex_slot_[p.vertex] == kInvalidId) return std::nullopt;
    return prefix_[vertex_slot_[p.vertex]];
  }
  if (p.edge >= edge_slot_.size() || edge_slot_[p.edge] == kInvalidId) return std::nullopt;
  const std::size_t i = edge_slot_[p.edge];
  return prefix_[i] + (forward_[i] ? p.lambda : 1.0 - p.lambda) * weight_[i];
}

NetworkPoint CycleFPS::point_at(double s) const {
  if (s < 0.0) s += total_;
  if (s >= total_) s -= total_;
  const auto i = static_cast<std::size_t>(
      std::upper_bound(prefix_.begin() + 1, prefix_.end() - 1, s) - prefix_.begin() - 1);
  return point_on_edge(i, s - prefix_[i]);
}

NetworkPoint CycleFPS::point_on_edge(std::size_t i, double off) const {
  off = std::clamp(off, 0.0, weight_[i]);
  double lambda = off / weight_[i];
  if (!forward_[i]) lambda = 1.0 - lambda;
  if (lambda <= kSnapTolerance) return NetworkPoint::at_vertex(edge_u_[i]);
  if (lambda >= 1.0 - kSnapTolerance) return NetworkPoint::at_vertex(edge_v_[i]);
  return NetworkPoint{layout_.edges[i], kInvalidId, lambda};
}

double CycleFPS::arc_distance(double a, double b) const {
  const double d = std::abs(a - b);
  return std::min(d, total_ - d);
}

std::size_t CycleFPS::locate(double s) const {
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s,
                             [](double value, const Breakpoint& b) {
                               metrics::comparison();
                               return value < b.position;
                             });
  return it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
}

NetworkPoint CycleFPS::farthest_point_at(double s) const {
  const std::size_t k = locate(s);
  const std::size_t a = antipode_of(k);
  double target = breaks_[a].position + (s - breaks_[k].position);
  if (target >= total_) target -= total_;
  std::size_t i = breaks_[a].edge;
  double off = target - prefix_[i];
  while (i + 1 < weight_.size() && off > weight_[i]) {
    off -= weight_[i];
    ++i;
  }
  return point_on_edge(i, off);
}

NetworkPoint CycleFPS::farthest_point(const NetworkPoint& p) const {
  auto s = position_of(p);
  if (!s) throw InvalidPointError("point is not on the cycle");
  return farthest_point_at(*s);
}

FarthestSet CycleFPS::farthest(const Network& net, const NetworkPoint& p) const {
  return make_farthest_set(net, eccentricity(), {farthest_point(p)});
}

}  // namespace netfar
