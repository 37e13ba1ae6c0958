#pragma once

#include <optional>
#include <span>
#include <vector>

#include "netfar/cycle_fps.hpp"
#include "netfar/decomposition.hpp"
#include "netfar/network.hpp"
#include "netfar/point_sets.hpp"
#include "netfar/tree_fps.hpp"
#include "netfar/unicyclic_fps.hpp"

namespace netfar {

/// Annotations of the two arcs carried by one link (bag B, hinge h) of the
/// tree structure.
struct ArcAnnotation {
  double into_bag_cut = 0.0;     // ecc of h in bcut(B, h), arc B -> h
  double into_co_bag_cut = 0.0;  // ecc of h in co-bcut(B, h), arc h -> B
  std::uint32_t shortcut = kInvalidId;  // target link of arc h -> B
};

/// Largest and second largest co-bag-cut value at a hinge.
struct HingeRecord {
  double first = 0.0;
  double second = 0.0;
  std::uint32_t first_bag = kInvalidId;
  std::uint32_t second_bag = kInvalidId;
};

struct CactusOptions {
  /// Added to every pendant weight of the initial bag before propagation.
  /// Only useful to check that verification catches a broken structure.
  double pendant_perturbation = 0.0;
};

/// Farthest-point structure on a cactus network.
///
/// Every bag keeps the farthest-point structure of its perspective: the bag
/// with each bag-cut at a hinge h replaced by a pendant edge h-ĥ. Local ids
/// in a perspective follow the ascending global ids of the bag; dummies come
/// after the real vertices and pendant edges after the real edges.
class CactusFPS {
 public:
  enum class PerspectiveKind { Tree, UniCyclic, Cycle };

  explicit CactusFPS(Network net, CactusOptions options = {});

  const Network& network() const noexcept { return net_; }
  const BlockCutDecomposition& decomposition() const noexcept { return dec_; }
  std::uint32_t initial_bag() const noexcept { return root_; }
  std::span<const ArcAnnotation> arcs() const noexcept { return arcs_; }
  std::span<const HingeRecord> hinge_records() const noexcept { return records_; }
  PerspectiveKind perspective_kind(std::uint32_t bag) const { return bags_[bag].kind; }

  /// Link joining hinge and bag, or kInvalidId.
  std::uint32_t link_of(std::uint32_t hinge, std::uint32_t bag) const;
  /// Bag owning q: the bag of the edge of q's display form.
  std::uint32_t bag_of(const NetworkPoint& q) const;

  /// Eccentricity of the pendant dummy of `link` inside the perspective of its bag.
  double dummy_eccentricity(std::uint32_t link) const;
  /// Eccentricity of q (a point of `bag`) answered by that bag's perspective.
  double eccentricity_in_bag(std::uint32_t bag, const NetworkPoint& q) const;

  double eccentricity(const NetworkPoint& q) const;
  /// Calls visit for each farthest point; the same point may be reported
  /// from two bags when it is a hinge. Bags whose perspective is queried are
  /// appended to `visited` when given.
  bool for_each_farthest(const NetworkPoint& q, PointVisitor visit,
                         std::vector<std::uint32_t>* visited = nullptr) const;
  FarthestSet farthest(const NetworkPoint& q, std::vector<std::uint32_t>* visited = nullptr) const;
  std::size_t count_farthest(const NetworkPoint& q) const { return farthest(q).points.size(); }

  /// Lambdas per edge at which the eccentricity profile may bend.
  std::vector<std::vector<double>> profile_breakpoints() const;
  CenterSet continuous_centers() const;

 private:
  struct Perspective {
    PerspectiveKind kind = PerspectiveKind::Tree;
    std::vector<VertexId> vertices;     // global ids of the real vertices
    std::vector<EdgeId> edges;          // global ids of the real edges
    std::vector<std::uint32_t> dummy_link;  // per dummy, in local order
    std::optional<TreeFPS> tree;
    std::optional<UniFPS> uni;
    std::optional<Network> cycle_net;
    std::optional<CycleFPS> cycle;
  };

  void build_order();
  void pass_bottom_up();
  void pass_top_down();
  void build_perspective(std::uint32_t bag);
  void finish_hinge(std::uint32_t hinge);
  void place_shortcut(std::uint32_t link);

  NetworkPoint to_local(std::uint32_t bag, const NetworkPoint& q) const;
  double local_eccentricity(const Perspective& p, const NetworkPoint& local) const;
  bool local_farthest(const Perspective& p, const NetworkPoint& local, PointVisitor visit) const;
  /// Reports the farthest points of h from inside co-bcut(B, h) for every
  /// bag B at the hinge of `link` tied with the bag-cut value of `link`.
  template <class Fn>
  void for_each_tied_arc(std::uint32_t link, Fn&& fn) const;

  Network net_;
  BlockCutDecomposition dec_;
  CactusOptions options_;
  std::uint32_t root_ = 0;
  std::vector<std::uint32_t> order_;         // bags in breadth-first order from the root
  std::vector<std::uint32_t> parent_link_;   // per bag, link to its parent hinge
  std::vector<std::uint32_t> hinge_parent_;  // per hinge, link to its parent bag
  std::vector<ArcAnnotation> arcs_;
  std::vector<HingeRecord> records_;
  std::vector<std::vector<std::uint32_t>> ranked_;  // per hinge, links by co-bag-cut value, descending
  std::vector<Perspective> bags_;
  std::vector<VertexId> link_dummy_;  // local id of the dummy of each link
  std::vector<EdgeId> local_edge_;    // global edge -> local id in its bag
};

}  // namespace netfar
