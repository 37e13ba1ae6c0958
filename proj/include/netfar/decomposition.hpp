#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "netfar/network.hpp"

namespace netfar {

enum class BagKind { Block, Branch };

/// One bag of a cactus: a simple cycle (Block) or a maximal tree of bridge
/// edges (Branch).
struct Bag {
  BagKind kind = BagKind::Branch;
  /// Block: cyclic order, edges[i] joins vertices[i] and vertices[i+1 mod k],
  /// starting at the smallest vertex and heading to its smaller cycle neighbour.
  /// Branch: vertices ascending, edges ascending.
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  std::vector<std::uint32_t> links;
};

struct Hinge {
  VertexId vertex = kInvalidId;
  std::vector<std::uint32_t> links;
};

/// Edge (bag, hinge) of the tree structure. Each link carries the two arcs
/// bag -> hinge and hinge -> bag.
struct Link {
  std::uint32_t bag = 0;
  std::uint32_t hinge = 0;
};

/// Bags, hinges, and the bipartite tree structure T(G) of a cactus.
struct BlockCutDecomposition {
  std::vector<Bag> bags;
  std::vector<Hinge> hinges;
  std::vector<Link> links;
  std::vector<std::uint32_t> edge_bag;          // per network edge
  std::vector<std::uint32_t> hinge_of_vertex;   // per vertex, kInvalidId when not a hinge
};

/// Linear-time decomposition via one depth-first traversal.
/// Throws NotCactusError when some edge lies on two simple cycles.
BlockCutDecomposition decompose(const Network& net);

bool is_cactus(const Network& net);

/// Bag and hinge counts for any network, where a block is any biconnected
/// component with at least three vertices.
struct BagCounts {
  std::size_t bags = 0;
  std::size_t hinges = 0;
};
BagCounts count_bags(const Network& net);

}  // namespace netfar
