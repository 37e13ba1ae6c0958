#pragma once

#include <vector>

#include "netfar/network.hpp"
#include "netfar/point_sets.hpp"

// Exact and deliberately naive reference routines. Every fast structure in
// this library is checked against these.
namespace netfar::oracle {

/// Shortest distance from `source` to every vertex.
std::vector<double> vertex_distances(const Network& net, const NetworkPoint& source);

double distance(const Network& net, const NetworkPoint& p, const NetworkPoint& q);

double eccentricity(const Network& net, const NetworkPoint& p);

FarthestSet farthest_points(const Network& net, const NetworkPoint& p);

/// Shortest path tree of a point with every non-tree edge cut at its
/// farthest point from the root.
struct ExtendedSPT {
  struct Node {
    VertexId vertex = kInvalidId;  // invalid for the root (when interior) and cut nodes
    EdgeId edge = kInvalidId;      // edge holding a non-vertex node
    double offset = 0.0;           // distance from edge(edge).u
    double distance = 0.0;         // distance from the root
  };
  struct TreeEdge {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    double length = 0.0;
  };
  NetworkPoint root;
  std::uint32_t root_node = 0;
  std::vector<Node> nodes;
  std::vector<TreeEdge> edges;
  std::vector<std::uint32_t> leaves;

  double max_leaf_distance() const;
};

ExtendedSPT extended_spt(const Network& net, const NetworkPoint& root);

/// Continuous center set by brute-force envelope construction on each edge.
CenterSet center_set(const Network& net);

/// All-pairs vertex distances (row-major, n x n).
std::vector<double> all_pairs(const Network& net);

}  // namespace netfar::oracle
