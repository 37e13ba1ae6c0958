#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "netfar/common.hpp"

namespace netfar {

/// An undirected edge stored in canonical orientation (u < v).
struct Edge {
  VertexId u = kInvalidId;
  VertexId v = kInvalidId;
  double weight = 0.0;
};

struct Incidence {
  VertexId neighbor;
  EdgeId edge;
};

/// A point on the continuum of a network.
///
/// Either a vertex (`vertex` set, `edge` invalid) or a point strictly inside
/// an edge, located `lambda * weight` away from the edge's first endpoint.
/// Values produced by `Network::point` are canonical: a point at a vertex
/// always uses the vertex form.
struct NetworkPoint {
  EdgeId edge = kInvalidId;
  VertexId vertex = kInvalidId;
  double lambda = 0.0;

  static NetworkPoint at_vertex(VertexId v) { return NetworkPoint{kInvalidId, v, 0.0}; }
  bool is_vertex() const noexcept { return vertex != kInvalidId; }

  friend bool operator==(const NetworkPoint&, const NetworkPoint&) = default;
};

enum class NetworkClass { Tree, Cycle, UniCyclic, Cactus, General };

std::string_view to_string(NetworkClass c);
std::optional<NetworkClass> parse_network_class(std::string_view s);

/// Simple, connected, undirected graph with positive edge weights.
///
/// Vertex indices double as the canonical order: for parsed networks the
/// indices follow the lexicographic order of the vertex names, so "first
/// endpoint" always means the lexicographically smaller id. Derived networks
/// (perspectives) pick indices so that the orientation of shared edges is
/// preserved.
class Network {
 public:
  /// Validates and takes ownership. Edge endpoints are reoriented so u < v;
  /// edge order is kept. Throws ValidationError.
  Network(std::vector<std::string> names, std::vector<Edge> edges);

  /// Network on vertices 0..n-1 with generated names.
  static Network from_edges(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Incidence> incident(VertexId v) const {
    return {incidence_.data() + offsets_[v], incidence_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  const std::string& name(VertexId v) const { return names_[v]; }
  std::span<const std::string> names() const noexcept { return names_; }
  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;

  VertexId other_endpoint(EdgeId e, VertexId v) const {
    const Edge& ed = edges_[e];
    return ed.u == v ? ed.v : ed.u;
  }

  /// Canonical point on edge `e` at fraction `lambda` from edge(e).u.
  /// Throws InvalidPointError when lambda is outside [0,1] beyond the snap tolerance.
  NetworkPoint point(EdgeId e, double lambda) const;

  /// Distance along the edge from edge(e).u for a point on e (vertex form
  /// allowed when the vertex is an endpoint of e).
  double offset_on(EdgeId e, const NetworkPoint& p) const;

  /// Representation used for printing and ordering: vertices are reported
  /// on their first incident edge in canonical edge order.
  std::pair<EdgeId, double> display_form(const NetworkPoint& p) const;

  /// True when p names a valid position on this network.
  bool contains(const NetworkPoint& p) const;

 private:
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> incidence_;
  std::unordered_map<std::uint64_t, EdgeId> edge_index_;
  std::unordered_map<std::string, VertexId> name_index_;
};

/// canonical_point(u, v, lambda) == canonical_point(v, u, 1 - lambda).
NetworkPoint canonical_point(const Network& net, VertexId u, VertexId v, double lambda);
NetworkPoint canonical_point(const Network& net, std::string_view u, std::string_view v,
                             double lambda);

/// Parses the line-oriented `edge <u> <v> <w>` format. Vertex ids are kept
/// verbatim; vertex indices follow their lexicographic order and edges are
/// sorted by canonical endpoints.
Network parse_network(std::istream& in);
Network parse_network(std::string_view text);
Network load_network(const std::string& path);

/// Inverse of parse_network; weights use the shortest round-trip decimal form.
std::string format_network(const Network& net);

NetworkClass classify(const Network& net);

/// Approximate positional equality of two points (distance along a shared edge).
bool same_position(const Network& net, const NetworkPoint& a, const NetworkPoint& b,
                   double tol = kTieTolerance);

}  // namespace netfar
