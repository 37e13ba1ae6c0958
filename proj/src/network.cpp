#include "netfar/network.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>
#include <tuple>

#include "netfar/decomposition.hpp"

namespace netfar {

namespace {

std::uint64_t edge_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

bool is_connected(std::size_t n, std::span<const std::size_t> offsets,
                  std::span<const Incidence> incidence) {
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    VertexId x = stack.back();
    stack.pop_back();
    for (std::size_t i = offsets[x]; i < offsets[x + 1]; ++i) {
      VertexId y = incidence[i].neighbor;
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  return reached == n;
}

}  // namespace

std::string_view to_string(NetworkClass c) {
  switch (c) {
    case NetworkClass::Tree: return "tree";
    case NetworkClass::Cycle: return "cycle";
    case NetworkClass::UniCyclic: return "unicyclic";
    case NetworkClass::Cactus: return "cactus";
    case NetworkClass::General: return "general";
  }
  return "general";
}

std::optional<NetworkClass> parse_network_class(std::string_view s) {
  for (auto c : {NetworkClass::Tree, NetworkClass::Cycle, NetworkClass::UniCyclic,
                 NetworkClass::Cactus, NetworkClass::General}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

Network::Network(std::vector<std::string> names, std::vector<Edge> edges)
    : names_(std::move(names)), edges_(std::move(edges)) {
  const std::size_t n = names_.size();
  if (edges_.empty()) throw ValidationError("network has no edges");
  std::vector<std::size_t> degree(n, 0);
  edge_index_.reserve(edges_.size() * 2);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    Edge& ed = edges_[e];
    if (ed.u >= n || ed.v >= n) throw ValidationError("edge endpoint out of range");
    if (ed.u == ed.v) throw ValidationError("self-loop at vertex '" + names_[ed.u] + "'");
    if (!(ed.weight > 0.0) || !std::isfinite(ed.weight)) {
      throw ValidationError("non-positive weight on edge '" + names_[ed.u] + "'-'" +
                            names_[ed.v] + "'");
    }
    if (ed.u > ed.v) std::swap(ed.u, ed.v);
    if (!edge_index_.emplace(edge_key(ed.u, ed.v), e).second) {
      throw ValidationError("duplicate edge '" + names_[ed.u] + "'-'" + names_[ed.v] + "'");
    }
    ++degree[ed.u];
    ++degree[ed.v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  incidence_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    incidence_[fill[ed.u]++] = {ed.v, e};
    incidence_[fill[ed.v]++] = {ed.u, e};
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] == 0) throw ValidationError("isolated vertex '" + names_[v] + "'");
  }
  if (!is_connected(n, offsets_, incidence_)) throw ValidationError("network is disconnected");
  name_index_.reserve(n);
  for (VertexId v = 0; v < n; ++v) {
    if (!name_index_.emplace(names_[v], v).second) {
      throw ValidationError("duplicate vertex name '" + names_[v] + "'");
    }
  }
}

Network Network::from_edges(std::size_t vertex_count, std::vector<Edge> edges) {
  // Zero padding keeps lexicographic name order equal to index order.
  const std::size_t width = std::to_string(vertex_count > 0 ? vertex_count - 1 : 0).size();
  std::vector<std::string> names(vertex_count);
  for (std::size_t i = 0; i < vertex_count; ++i) {
    std::string digits = std::to_string(i);
    names[i] = "v" + std::string(width - digits.size(), '0') + digits;
  }
  return Network(std::move(names), std::move(edges));
}

std::optional<VertexId> Network::find_vertex(std::string_view name) const {
  auto it = name_index_.find(std::string(name));
  if (it == name_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> Network::find_edge(VertexId a, VertexId b) const {
  auto it = edge_index_.find(edge_key(a, b));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

NetworkPoint Network::point(EdgeId e, double lambda) const {
  if (e >= edges_.size()) throw InvalidPointError("unknown edge");
  if (!(lambda >= -kSnapTolerance && lambda <= 1.0 + kSnapTolerance)) {
    throw InvalidPointError("lambda out of range [0,1]");
  }
  const Edge& ed = edges_[e];
  if (lambda <= kSnapTolerance) return NetworkPoint::at_vertex(ed.u);
  if (lambda >= 1.0 - kSnapTolerance) return NetworkPoint::at_vertex(ed.v);
  return NetworkPoint{e, kInvalidId, lambda};
}

double Network::offset_on(EdgeId e, const NetworkPoint& p) const {
  const Edge& ed = edges_[e];
  if (p.is_vertex()) return p.vertex == ed.u ? 0.0 : ed.weight;
  return p.lambda * ed.weight;
}

std::pair<EdgeId, double> Network::display_form(const NetworkPoint& p) const {
  if (!p.is_vertex()) return {p.edge, p.lambda};
  EdgeId best = kInvalidId;
  for (const Incidence& inc : incident(p.vertex)) best = std::min(best, inc.edge);
  return {best, edges_[best].u == p.vertex ? 0.0 : 1.0};
}

bool Network::contains(const NetworkPoint& p) const {
  if (p.is_vertex()) return p.vertex < names_.size() && p.edge == kInvalidId;
  return p.edge < edges_.size() && p.lambda > 0.0 && p.lambda < 1.0;
}

NetworkPoint canonical_point(const Network& net, VertexId u, VertexId v, double lambda) {
  if (u >= net.vertex_count() || v >= net.vertex_count()) {
    throw InvalidPointError("unknown vertex");
  }
  auto e = net.find_edge(u, v);
  if (!e) throw InvalidPointError("no edge between '" + net.name(u) + "' and '" + net.name(v) + "'");
  if (!(lambda >= -kSnapTolerance && lambda <= 1.0 + kSnapTolerance)) {
    throw InvalidPointError("lambda out of range [0,1]");
  }
  return net.point(*e, net.edge(*e).u == u ? lambda : 1.0 - lambda);
}

NetworkPoint canonical_point(const Network& net, std::string_view u, std::string_view v,
                             double lambda) {
  auto a = net.find_vertex(u);
  auto b = net.find_vertex(v);
  if (!a) throw InvalidPointError("unknown vertex '" + std::string(u) + "'");
  if (!b) throw InvalidPointError("unknown vertex '" + std::string(v) + "'");
  return canonical_point(net, *a, *b, lambda);
}

Network parse_network(std::istream& in) {
  struct RawEdge {
    std::string u, v;
    double w;
    std::size_t line;
  };
  std::vector<RawEdge> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream tokens(line);
    std::string kw;
    if (!(tokens >> kw) || kw.front() == '#') continue;
    if (kw != "edge") throw ParseError(line_no, "expected 'edge', got '" + kw + "'");
    std::string u, v, w, extra;
    if (!(tokens >> u >> v >> w)) throw ParseError(line_no, "expected 'edge <u> <v> <w>'");
    if (tokens >> extra) throw ParseError(line_no, "trailing token '" + extra + "'");
    double weight = 0.0;
    auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), weight);
    if (ec != std::errc() || ptr != w.data() + w.size() || !std::isfinite(weight)) {
      throw ParseError(line_no, "invalid weight '" + w + "'");
    }
    if (!(weight > 0.0)) throw ParseError(line_no, "non-positive weight '" + w + "'");
    if (u == v) throw ParseError(line_no, "self-loop at '" + u + "'");
    raw.push_back({std::move(u), std::move(v), weight, line_no});
  }
  if (raw.empty()) throw ParseError(0, "network has no edges");

  std::vector<std::string> names;
  names.reserve(raw.size() * 2);
  for (const auto& r : raw) {
    names.push_back(r.u);
    names.push_back(r.v);
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  auto index_of = [&](const std::string& s) {
    return static_cast<VertexId>(std::lower_bound(names.begin(), names.end(), s) - names.begin());
  };

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  std::unordered_map<std::uint64_t, std::size_t> seen;
  for (const auto& r : raw) {
    VertexId a = index_of(r.u), b = index_of(r.v);
    if (a > b) std::swap(a, b);
    auto [it, fresh] = seen.emplace(edge_key(a, b), r.line);
    if (!fresh) {
      throw ParseError(r.line, "duplicate edge '" + r.u + "'-'" + r.v + "' (first on line " +
                                   std::to_string(it->second) + ")");
    }
    edges.push_back({a, b, r.w});
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& x, const Edge& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
  return Network(std::move(names), std::move(edges));
}

Network parse_network(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_network(in);
}

Network load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_network(in);
}

std::string format_network(const Network& net) {
  std::string out;
  char buf[64];
  for (const Edge& e : net.edges()) {
    auto res = std::to_chars(buf, buf + sizeof buf, e.weight);
    out += "edge ";
    out += net.name(e.u);
    out += ' ';
    out += net.name(e.v);
    out += ' ';
    out.append(buf, res.ptr);
    out += '\n';
  }
  return out;
}

NetworkClass classify(const Network& net) {
  const std::size_t n = net.vertex_count(), m = net.edge_count();
  if (m + 1 == n) return NetworkClass::Tree;
  if (m == n) {
    for (VertexId v = 0; v < n; ++v) {
      if (net.degree(v) != 2) return NetworkClass::UniCyclic;
    }
    return NetworkClass::Cycle;
  }
  return is_cactus(net) ? NetworkClass::Cactus : NetworkClass::General;
}

bool same_position(const Network& net, const NetworkPoint& a, const NetworkPoint& b,
                   double tol) {
  if (a.is_vertex() && b.is_vertex()) return a.vertex == b.vertex;
  if (!a.is_vertex() && !b.is_vertex() && a.edge == b.edge) {
    return std::abs(a.lambda - b.lambda) * net.edge(a.edge).weight <= tol;
  }
  // Compare through a shared endpoint: both points must sit within tol of it.
  auto near_vertex = [&](const NetworkPoint& p, VertexId v) {
    if (p.is_vertex()) return p.vertex == v;
    const Edge& e = net.edge(p.edge);
    if (e.u == v) return p.lambda * e.weight <= tol;
    if (e.v == v) return (1.0 - p.lambda) * e.weight <= tol;
    return false;
  };
  const NetworkPoint& edge_pt = a.is_vertex() ? b : a;
  const Edge& e = net.edge(edge_pt.edge);
  return (near_vertex(a, e.u) && near_vertex(b, e.u)) || (near_vertex(a, e.v) && near_vertex(b, e.v));
}

}  // namespace netfar
