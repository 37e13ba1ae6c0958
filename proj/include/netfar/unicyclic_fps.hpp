#pragma once

#include <optional>
#include <span>
#include <vector>

#include "netfar/cycle_fps.hpp"
#include "netfar/function_ref.hpp"
#include "netfar/network.hpp"
#include "netfar/point_sets.hpp"
#include "netfar/tree_fps.hpp"

namespace netfar {

using PointVisitor = FunctionRef<bool(const NetworkPoint&)>;

/// The cycle of a uni-cyclic network and the trees hanging from it. All
/// trees attached at one cycle vertex form a single branch; the hinge
/// belongs to its branch. Branches follow the cycle layout order.
struct UniDecomposition {
  struct Branch {
    VertexId hinge = kInvalidId;
    std::size_t cycle_index = 0;     // position of the hinge in cycle.vertices
    std::vector<VertexId> vertices;  // ascending, hinge included
    std::vector<EdgeId> edges;       // ascending
  };
  CycleLayout cycle;
  std::vector<Branch> branches;
  std::vector<std::uint32_t> edge_branch;    // kInvalidId for cycle edges
  std::vector<std::uint32_t> vertex_branch;  // kInvalidId for cycle vertices that are not hinges
};

/// Throws ClassError unless `net` has exactly one cycle and at least one branch.
UniDecomposition decompose_unicyclic(const Network& net);

/// Compressed branch t_i of the cycle perspective: hinge at arc position
/// `position`, pendant of weight `height`.
struct PendantSite {
  double position = 0.0;
  double height = 0.0;
};

struct RelevanceResult {
  std::vector<std::uint32_t> relevant;  // in cyclic order, starting from the smallest index
  std::uint64_t steps = 0;              // loop iterations
  bool invariant_held = true;           // checked at every mark when requested
};

/// t_i is dominated by t_j when t_j is farther from the antipode of v_i by
/// more than the tie tolerance.
bool dominated(double total_weight, const PendantSite& i, const PendantSite& j);

/// Circular-list elimination of dominated pendants (sites in cycle order).
RelevanceResult relevant_vertices(double total_weight, std::span<const PendantSite> sites,
                                  bool check_invariant = false);

/// Farthest-point structure on a uni-cyclic network.
class UniFPS {
 public:
  struct Branch {
    VertexId hinge = kInvalidId;
    double position = 0.0;  // arc position of the hinge
    double height = 0.0;    // eccentricity of the hinge inside the branch
    double exterior = 0.0;  // eccentricity of the hinge outside the branch
    std::vector<VertexId> vertices;  // global ids, local id = index
    std::vector<EdgeId> edges;       // global ids, local id = index
    VertexId local_hinge = kInvalidId;
    VertexId dummy = kInvalidId;     // local id of the exterior vertex
    TreeFPS tree;
  };
  /// Chain of the farthest-branch subdivision, from `start` to the next chain.
  struct Chain {
    double start = 0.0;  // unwrapped arc position
    std::uint32_t branch = 0;
  };
  struct BadCase {
    std::uint32_t branch = 0;
    bool antipode = false;                 // cycle antipode of the hinge is farthest
    std::vector<std::uint32_t> branches;   // farthest branches once the branch is removed
  };

  explicit UniFPS(Network net);

  const Network& network() const noexcept { return net_; }
  const UniDecomposition& decomposition() const noexcept { return dec_; }
  const CycleFPS& cycle() const noexcept { return cycle_; }
  std::span<const Branch> branches() const noexcept { return branches_; }
  const RelevanceResult& relevance() const noexcept { return relevance_; }
  std::span<const Chain> chains() const noexcept { return chains_; }
  const std::optional<BadCase>& bad_case() const noexcept { return bad_; }

  /// Largest distance from arc position s to a compressed branch, with every
  /// branch attaining it.
  struct BranchHits {
    double distance = 0.0;
    std::vector<std::uint32_t> branches;
  };
  BranchHits farthest_branches(double s) const;

  double eccentricity(const NetworkPoint& q) const;
  /// Calls visit for each farthest point; returns false if visit stopped early.
  bool for_each_farthest(const NetworkPoint& q, PointVisitor visit) const;
  FarthestSet farthest(const NetworkPoint& q) const;

  /// Lambdas per edge at which the eccentricity profile may bend.
  std::vector<std::vector<double>> profile_breakpoints() const;

 private:
  double branch_distance(double s, std::uint32_t b) const;
  std::size_t chain_at(double s) const;
  template <class Fn>
  void for_each_tied_branch(double s, double threshold, std::size_t chain, Fn&& fn) const;
  bool cascade_into(std::uint32_t b, PointVisitor& visit) const;
  bool exterior_of(std::uint32_t b, PointVisitor& visit) const;
  bool from_cycle(double s, PointVisitor& visit, std::uint32_t skip) const;
  NetworkPoint local_point(const Branch& br, const NetworkPoint& q) const;

  Network net_;
  UniDecomposition dec_;
  CycleFPS cycle_;
  std::vector<Branch> branches_;
  RelevanceResult relevance_;
  std::vector<std::uint32_t> relevant_rank_;  // index into relevance_.relevant, or kInvalidId
  std::vector<Chain> chains_;
  std::vector<VertexId> local_vertex_;  // global vertex -> local id in its branch
  std::vector<EdgeId> local_edge_;      // global edge -> local id in its branch
  std::optional<BadCase> bad_;
};

}  // namespace netfar
