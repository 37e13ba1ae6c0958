#pragma once

#include <optional>
#include <vector>

#include "netfar/network.hpp"
#include "netfar/point_sets.hpp"

namespace netfar {

/// A simple cycle inside some network: edges[i] joins vertices[i] and
/// vertices[i + 1 mod k].
struct CycleLayout {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
};

/// Layout of a pure cycle network, starting at the smallest vertex and
/// heading to its smaller neighbour. Throws ClassError for other networks.
CycleLayout cycle_layout(const Network& cycle);

/// Antipodal subdivision of a cycle.
///
/// Positions are arc lengths from vertices[0] along the layout direction.
/// The breakpoints are all vertex positions together with their antipodes;
/// breakpoint k and breakpoint (k + K/2) mod K are antipodal.
class CycleFPS {
 public:
  CycleFPS(const Network& net, CycleLayout layout);

  double total_weight() const noexcept { return total_; }
  double eccentricity() const noexcept { return 0.5 * total_; }
  const CycleLayout& layout() const noexcept { return layout_; }

  /// Arc position of p, or nullopt when p is not on the cycle.
  std::optional<double> position_of(const NetworkPoint& p) const;
  double vertex_position(std::size_t cycle_index) const { return prefix_[cycle_index]; }
  /// Index into layout().edges of the edge holding p (p not a vertex).
  std::size_t cycle_edge_of(EdgeId e) const { return edge_slot_[e]; }

  /// Canonical point at arc position s in [0, total_weight()).
  NetworkPoint point_at(double s) const;

  /// Cycle distance between two arc positions.
  double arc_distance(double a, double b) const;

  /// The unique farthest point of p (binary search over the breakpoints).
  NetworkPoint farthest_point(const NetworkPoint& p) const;
  NetworkPoint farthest_point_at(double s) const;
  FarthestSet farthest(const Network& net, const NetworkPoint& p) const;

  std::size_t breakpoint_count() const noexcept { return breaks_.size(); }
  double breakpoint_position(std::size_t k) const { return breaks_[k].position; }
  std::size_t antipode_of(std::size_t k) const { return (k + breaks_.size() / 2) % breaks_.size(); }

 private:
  struct Breakpoint {
    double position;
    std::size_t edge;  // layout edge holding the sub-edge that starts here
  };

  std::size_t locate(double s) const;
  NetworkPoint point_on_edge(std::size_t i, double off) const;

  CycleLayout layout_;
  std::vector<double> weight_;
  std::vector<char> forward_;  // edge(edges[i]).u == vertices[i]
  std::vector<VertexId> edge_u_, edge_v_;
  std::vector<double> prefix_;
  std::vector<std::size_t> edge_slot_;
  std::vector<std::size_t> vertex_slot_;
  std::vector<Breakpoint> breaks_;
  double total_ = 0.0;
};

}  // namespace netfar
