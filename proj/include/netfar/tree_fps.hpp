#pragma once

#include <span>
#include <vector>

#include "netfar/instrumentation.hpp"
#include "netfar/network.hpp"
#include "netfar/point_sets.hpp"

namespace netfar {

struct AbsoluteCenter {
  NetworkPoint point;
  double eccentricity = 0.0;
};

/// Midpoint of a longest leaf-to-leaf path. Throws ClassError unless `tree` is a tree.
AbsoluteCenter find_absolute_center(const Network& tree);

/// Farthest-point structure on a tree network.
///
/// Splitting the tree at its absolute center c yields sub-trees T_0..T_{r-1};
/// the farthest points of any p != c are the far leaves of every sub-tree
/// except the one holding p.
class TreeFPS {
 public:
  explicit TreeFPS(Network tree);

  const Network& network() const noexcept { return net_; }
  const NetworkPoint& center() const noexcept { return center_; }
  double center_eccentricity() const noexcept { return center_ecc_; }
  double distance_from_center(VertexId v) const { return dist_[v]; }
  double distance_to_center(const NetworkPoint& p) const;
  std::size_t subtree_count() const noexcept { return far_count_.size(); }

  /// kInvalidId when p coincides with the center.
  std::uint32_t subtree_of(const NetworkPoint& p) const;

  std::span<const VertexId> far_leaves(std::uint32_t subtree) const;
  std::size_t total_far_count() const noexcept { return total_far_; }

  double eccentricity(const NetworkPoint& p) const {
    metrics::query_step();
    return distance_to_center(p) + center_ecc_;
  }

  /// Calls visit(leaf) for every farthest point of p; stops early and
  /// returns false when visit returns false.
  template <class Visit>
  bool for_each_farthest(const NetworkPoint& p, Visit&& visit) const {
    const std::uint32_t skip = query_subtree(p);
    for (const Group& g : groups_) {
      metrics::query_step();
      if (g.subtree == skip) continue;
      for (std::size_t i = g.begin; i < g.end; ++i) {
        metrics::query_step();
        if (!visit(leaves_[i])) return false;
      }
    }
    return true;
  }

  FarthestSet farthest(const NetworkPoint& p) const;
  std::size_t count_farthest(const NetworkPoint& p) const;

 private:
  struct Group {
    std::uint32_t subtree;
    std::size_t begin, end;
  };

  std::uint32_t query_subtree(const NetworkPoint& p) const;

  Network net_;
  NetworkPoint center_;
  double center_ecc_ = 0.0;
  std::vector<double> dist_;
  std::vector<std::uint32_t> vertex_subtree_;
  std::vector<std::uint32_t> edge_subtree_;
  std::vector<std::size_t> far_count_;
  std::vector<std::size_t> far_begin_;
  std::vector<VertexId> leaves_;
  std::vector<Group> groups_;
  std::size_t total_far_ = 0;
};

}  // namespace netfar
