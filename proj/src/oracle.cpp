#include "netfar/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

namespace netfar::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using QueueEntry = std::pair<double, std::uint32_t>;
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

void relax_all(const Network& net, std::vector<double>& dist, MinQueue& queue) {
  while (!queue.empty()) {
    auto [d, x] = queue.top();
    queue.pop();
    if (d > dist[x]) continue;
    for (const Incidence& in : net.incident(x)) {
      const double nd = d + net.edge(in.edge).weight;
      if (nd < dist[in.neighbor]) {
        dist[in.neighbor] = nd;
        queue.push({nd, in.neighbor});
      }
    }
  }
}

// Maximum of min(d0 + t, d1 + len - t) over t in [0, len].
std::pair<double, double> piece_maximum(double d0, double d1, double len) {
  const double t = std::clamp(0.5 * (d1 + len - d0), 0.0, len);
  return {t, std::min(d0 + t, d1 + len - t)};
}

// Calls fn(edge, start offset, length, distance at start, distance at end)
// for each edge piece once the edge holding p is cut at p.
template <class Fn>
void for_each_piece(const Network& net, const NetworkPoint& p, const std::vector<double>& dist,
                    Fn&& fn) {
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge(e);
    if (!p.is_vertex() && p.edge == e) {
      const double t = p.lambda * ed.weight;
      fn(e, 0.0, t, dist[ed.u], 0.0);
      fn(e, t, ed.weight - t, 0.0, dist[ed.v]);
    } else {
      fn(e, 0.0, ed.weight, dist[ed.u], dist[ed.v]);
    }
  }
}

}  // namespace

std::vector<double> vertex_distances(const Network& net, const NetworkPoint& source) {
  std::vector<double> dist(net.vertex_count(), kInf);
  MinQueue queue;
  if (source.is_vertex()) {
    dist[source.vertex] = 0.0;
    queue.push({0.0, source.vertex});
  } else {
    const Edge& e = net.edge(source.edge);
    dist[e.u] = source.lambda * e.weight;
    dist[e.v] = (1.0 - source.lambda) * e.weight;
    queue.push({dist[e.u], e.u});
    queue.push({dist[e.v], e.v});
  }
  relax_all(net, dist, queue);
  return dist;
}

double distance(const Network& net, const NetworkPoint& p, const NetworkPoint& q) {
  const auto dist = vertex_distances(net, p);
  if (q.is_vertex()) return dist[q.vertex];
  const Edge& e = net.edge(q.edge);
  const double t = q.lambda * e.weight;
  double best = std::min(dist[e.u] + t, dist[e.v] + e.weight - t);
  if (!p.is_vertex() && p.edge == q.edge) best = std::min(best, std::abs(p.lambda - q.lambda) * e.weight);
  return best;
}

double eccentricity(const Network& net, const NetworkPoint& p) {
  const auto dist = vertex_distances(net, p);
  double best = 0.0;
  for_each_piece(net, p, dist, [&](EdgeId, double, double len, double d0, double d1) {
    best = std::max(best, piece_maximum(d0, d1, len).second);
  });
  return best;
}

FarthestSet farthest_points(const Network& net, const NetworkPoint& p) {
  const auto dist = vertex_distances(net, p);
  struct Candidate {
    EdgeId edge;
    double offset;
    double value;
  };
  std::vector<Candidate> cands;
  double best = 0.0;
  for_each_piece(net, p, dist, [&](EdgeId e, double start, double len, double d0, double d1) {
    auto [t, value] = piece_maximum(d0, d1, len);
    cands.push_back({e, start + t, value});
    best = std::max(best, value);
  });
  std::vector<NetworkPoint> points;
  for (const auto& c : cands) {
    if (c.value >= best - kTieTolerance) {
      const double w = net.edge(c.edge).weight;
      points.push_back(net.point(c.edge, std::clamp(c.offset / w, 0.0, 1.0)));
    }
  }
  return make_farthest_set(net, best, std::move(points));
}

double ExtendedSPT::max_leaf_distance() const {
  double best = 0.0;
  for (auto leaf : leaves) best = std::max(best, nodes[leaf].distance);
  return best;
}

ExtendedSPT extended_spt(const Network& net, const NetworkPoint& root) {
  const std::size_t n = net.vertex_count();
  ExtendedSPT spt;
  spt.root = root;
  spt.nodes.resize(n);
  for (VertexId v = 0; v < n; ++v) spt.nodes[v].vertex = v;

  // Edges of the graph with the root's edge cut at the root.
  struct Piece {
    std::uint32_t a, b;
    double length;
    EdgeId edge;
    double start;  // offset of endpoint a along the edge
  };
  std::vector<Piece> pieces;
  if (root.is_vertex()) {
    spt.root_node = root.vertex;
  } else {
    spt.root_node = static_cast<std::uint32_t>(spt.nodes.size());
    const Edge& e = net.edge(root.edge);
    spt.nodes.push_back({kInvalidId, root.edge, root.lambda * e.weight, 0.0});
  }
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge(e);
    if (!root.is_vertex() && root.edge == e) {
      const double t = root.lambda * ed.weight;
      pieces.push_back({ed.u, spt.root_node, t, e, 0.0});
      pieces.push_back({spt.root_node, ed.v, ed.weight - t, e, t});
    } else {
      pieces.push_back({ed.u, ed.v, ed.weight, e, 0.0});
    }
  }
  const std::size_t node_count = spt.nodes.size();
  std::vector<std::vector<std::uint32_t>> adjacency(node_count);
  for (std::uint32_t i = 0; i < pieces.size(); ++i) {
    adjacency[pieces[i].a].push_back(i);
    adjacency[pieces[i].b].push_back(i);
  }
  std::vector<double> dist(node_count, kInf);
  std::vector<std::uint32_t> parent_piece(node_count, kInvalidId);
  MinQueue queue;
  dist[spt.root_node] = 0.0;
  queue.push({0.0, spt.root_node});
  while (!queue.empty()) {
    auto [d, x] = queue.top();
    queue.pop();
    if (d > dist[x]) continue;
    for (auto pi : adjacency[x]) {
      const Piece& pc = pieces[pi];
      const std::uint32_t y = pc.a == x ? pc.b : pc.a;
      if (d + pc.length < dist[y]) {
        dist[y] = d + pc.length;
        parent_piece[y] = pi;
        queue.push({dist[y], y});
      }
    }
  }
  for (std::uint32_t x = 0; x < node_count; ++x) spt.nodes[x].distance = dist[x];

  std::vector<char> in_tree(pieces.size(), 0);
  for (std::uint32_t x = 0; x < node_count; ++x) {
    if (parent_piece[x] == kInvalidId) continue;
    const Piece& pc = pieces[parent_piece[x]];
    in_tree[parent_piece[x]] = 1;
    spt.edges.push_back({pc.a == x ? pc.b : pc.a, x, pc.length});
  }
  for (std::uint32_t i = 0; i < pieces.size(); ++i) {
    if (in_tree[i]) continue;
    const Piece& pc = pieces[i];
    auto [t, value] = piece_maximum(dist[pc.a], dist[pc.b], pc.length);
    if (t > 0.0) {
      const auto x = static_cast<std::uint32_t>(spt.nodes.size());
      spt.nodes.push_back({kInvalidId, pc.edge, pc.start + t, dist[pc.a] + t});
      spt.edges.push_back({pc.a, x, t});
    }
    if (t < pc.length) {
      const auto y = static_cast<std::uint32_t>(spt.nodes.size());
      spt.nodes.push_back({kInvalidId, pc.edge, pc.start + t, dist[pc.b] + pc.length - t});
      spt.edges.push_back({pc.b, y, pc.length - t});
    }
  }
  std::vector<std::uint32_t> degree(spt.nodes.size(), 0);
  for (const auto& te : spt.edges) {
    ++degree[te.from];
    ++degree[te.to];
  }
  for (std::uint32_t x = 0; x < spt.nodes.size(); ++x) {
    if (degree[x] == 1 && x != spt.root_node) spt.leaves.push_back(x);
  }
  return spt;
}

std::vector<double> all_pairs(const Network& net) {
  const std::size_t n = net.vertex_count();
  std::vector<double> d(n * n);
  for (VertexId s = 0; s < n; ++s) {
    auto row = vertex_distances(net, NetworkPoint::at_vertex(s));
    std::copy(row.begin(), row.end(), d.begin() + static_cast<std::ptrdiff_t>(s) * n);
  }
  return d;
}

CenterSet center_set(const Network& net) {
  const std::size_t n = net.vertex_count();
  const auto dist = all_pairs(net);
  auto D = [&](VertexId a, VertexId b) { return dist[static_cast<std::size_t>(a) * n + b]; };

  struct Line {
    int slope;
    double intercept;
  };
  std::vector<std::vector<ProfileSample>> profiles(net.edge_count());
  std::vector<double> breaks;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& uv = net.edge(e);
    const double w = uv.weight;
    const double K = 0.5 * (D(uv.u, uv.v) + w);
    breaks.assign({0.0, w, 0.5 * w, w - K, K});
    for (EdgeId f = 0; f < net.edge_count(); ++f) {
      if (f == e) continue;
      for (VertexId t : {net.edge(f).u, net.edge(f).v}) {
        breaks.push_back(0.5 * (w + D(uv.v, t) - D(uv.u, t)));
      }
    }
    for (double& b : breaks) b = std::clamp(b, 0.0, w);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [&](double a, double b) { return b - a <= 1e-12 * std::max(1.0, w); }),
                 breaks.end());
    breaks.back() = w;

    auto& prof = profiles[e];
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
      const double x0 = breaks[k], x1 = breaks[k + 1];
      const double xm = 0.5 * (x0 + x1);
      // Best intercept per slope -1, 0, +1 on this interval.
      std::array<double, 3> best{-kInf, -kInf, -kInf};
      auto offer = [&](Line l) { best[l.slope + 1] = std::max(best[l.slope + 1], l.intercept); };
      auto term = [&](VertexId t) -> Line {
        const double a = D(uv.u, t), b = D(uv.v, t);
        return xm + a <= w - xm + b ? Line{1, a} : Line{-1, w + b};
      };
      for (EdgeId f = 0; f < net.edge_count(); ++f) {
        if (f == e) continue;
        const Edge& ab = net.edge(f);
        Line la = term(ab.u), lb = term(ab.v);
        offer({(la.slope + lb.slope) / 2, 0.5 * (la.intercept + lb.intercept + ab.weight)});
      }
      Line toward_v = K <= w - xm ? Line{0, K} : Line{-1, w};
      Line toward_u = K <= xm ? Line{0, K} : Line{1, 0.0};
      auto at = [](Line l, double x) { return l.slope * x + l.intercept; };
      offer(at(toward_v, xm) >= at(toward_u, xm) ? toward_v : toward_u);

      auto envelope = [&](double x) {
        double v = -kInf;
        for (int s = -1; s <= 1; ++s) {
          if (best[s + 1] > -kInf) v = std::max(v, s * x + best[s + 1]);
        }
        return v;
      };
      std::vector<double> xs{x0};
      const double cm = best[0], c0 = best[1], cp = best[2];
      for (double x : {c0 - cp, cm - c0, 0.5 * (cm - cp)}) {
        if (std::isfinite(x) && x > x0 && x < x1) xs.push_back(x);
      }
      std::sort(xs.begin() + 1, xs.end());
      for (double x : xs) prof.push_back({x / w, envelope(x)});
      if (k + 2 == breaks.size()) prof.push_back({1.0, envelope(x1)});
    }
  }
  return center_set_from_profiles(net, profiles);
}

}  // namespace netfar::oracle
