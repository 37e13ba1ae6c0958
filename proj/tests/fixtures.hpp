#pragma once

#include <string>
#include <vector>

#include "netfar/network.hpp"

namespace fixtures {

inline netfar::Network path_ab2() { return netfar::parse_network("edge a b 2\n"); }

inline netfar::Network path_abc() { return netfar::parse_network("edge a b 1\nedge b c 1\n"); }

inline netfar::Network unit_star() {
  return netfar::parse_network("edge h l1 1\nedge h l2 1\nedge h l3 1\n");
}

inline netfar::Network unit_triangle() {
  return netfar::parse_network("edge v1 v2 1\nedge v2 v3 1\nedge v3 v1 1\n");
}

inline netfar::Network unit_square() {
  return netfar::parse_network("edge v1 v2 1\nedge v2 v3 1\nedge v3 v4 1\nedge v4 v1 1\n");
}

inline netfar::Network square_pendant() {
  return netfar::parse_network(
      "edge v1 v2 1\nedge v2 v3 1\nedge v3 v4 1\nedge v4 v1 1\nedge v1 t 1\n");
}

inline netfar::Network twin_triangles() {
  return netfar::parse_network(
      "edge h a1 1\nedge a1 a2 1\nedge a2 h 1\nedge h b1 1\nedge b1 b2 1\nedge b2 h 1\n");
}

inline netfar::Network k4() {
  return netfar::parse_network(
      "edge a b 1\nedge a c 1\nedge a d 1\nedge b c 1\nedge b d 1\nedge c d 1\n");
}

inline netfar::NetworkPoint vertex(const netfar::Network& net, const std::string& name) {
  return netfar::NetworkPoint::at_vertex(*net.find_vertex(name));
}

inline netfar::NetworkPoint on(const netfar::Network& net, const std::string& u, const std::string& v,
                               double lambda) {
  return netfar::canonical_point(net, u, v, lambda);
}

// Points every structure is checked at: vertices, edge midpoints, and
// `per_edge` interior points at fixed fractions.
inline std::vector<netfar::NetworkPoint> probe_points(const netfar::Network& net, int per_edge = 3) {
  std::vector<netfar::NetworkPoint> pts;
  for (netfar::VertexId v = 0; v < net.vertex_count(); ++v) pts.push_back(netfar::NetworkPoint::at_vertex(v));
  for (netfar::EdgeId e = 0; e < net.edge_count(); ++e) {
    pts.push_back(net.point(e, 0.5));
    for (int j = 1; j <= per_edge; ++j) pts.push_back(net.point(e, (j - 0.37) / (per_edge + 0.5)));
  }
  return pts;
}

}  // namespace fixtures

namespace fixtures {

// Sub-network made of the edges accepted by keep; vertex names are preserved.
template <class Keep>
netfar::Network subnetwork(const netfar::Network& net, Keep keep) {
  std::vector<netfar::VertexId> index(net.vertex_count(), netfar::kInvalidId);
  std::vector<std::string> names;
  std::vector<netfar::Edge> edges;
  auto id = [&](netfar::VertexId v) {
    if (index[v] == netfar::kInvalidId) {
      index[v] = static_cast<netfar::VertexId>(names.size());
      names.push_back(net.name(v));
    }
    return index[v];
  };
  for (netfar::EdgeId e = 0; e < net.edge_count(); ++e) {
    if (!keep(e)) continue;
    const netfar::Edge& ed = net.edge(e);
    edges.push_back({id(ed.u), id(ed.v), ed.weight});
  }
  return netfar::Network(std::move(names), std::move(edges));
}

inline netfar::NetworkPoint vertex_named(const netfar::Network& net, const std::string& name) {
  return netfar::NetworkPoint::at_vertex(*net.find_vertex(name));
}

}  // namespace fixtures
