#include "netfar/tree_fps.hpp"

#include <algorithm>
#include <cmath>

namespace netfar {

namespace {

struct Sweep {
  std::vector<double> dist;
  std::vector<VertexId> parent;
};

Sweep sweep_from(const Network& tree, VertexId root) {
  Sweep s;
  s.dist.assign(tree.vertex_count(), 0.0);
  s.parent.assign(tree.vertex_count(), kInvalidId);
  std::vector<VertexId> stack{root};
  s.parent[root] = root;
  while (!stack.empty()) {
    VertexId x = stack.back();
    stack.pop_back();
    for (const Incidence& in : tree.incident(x)) {
      metrics::build_step();
      if (s.parent[in.neighbor] != kInvalidId) continue;
      s.parent[in.neighbor] = x;
      s.dist[in.neighbor] = s.dist[x] + tree.edge(in.edge).weight;
      stack.push_back(in.neighbor);
    }
  }
  return s;
}

// Lowest id among the vertices within tolerance of the largest distance.
VertexId farthest_vertex(const std::vector<double>& dist) {
  const double best = *std::max_element(dist.begin(), dist.end());
  VertexId v = 0;
  while (dist[v] < best - kTieTolerance) ++v;
  return v;
}

void require_tree(const Network& net) {
  if (net.edge_count() + 1 != net.vertex_count()) throw ClassError("network is not a tree");
}

}  // namespace

AbsoluteCenter find_absolute_center(const Network& tree) {
  require_tree(tree);
  VertexId start = 0;
  while (tree.degree(start) != 1) ++start;
  const VertexId a = farthest_vertex(sweep_from(tree, start).dist);
  const Sweep from_a = sweep_from(tree, a);
  const VertexId b = farthest_vertex(from_a.dist);
  const double half = 0.5 * from_a.dist[b];

  VertexId y = b;
  while (from_a.dist[from_a.parent[y]] > half) y = from_a.parent[y];
  const VertexId x = from_a.parent[y];
  AbsoluteCenter c;
  c.eccentricity = half;
  if (half - from_a.dist[x] <= kTieTolerance) {
    c.point = NetworkPoint::at_vertex(x);
  } else if (from_a.dist[y] - half <= kTieTolerance) {
    c.point = NetworkPoint::at_vertex(y);
  } else {
    const EdgeId e = *tree.find_edge(x, y);
    const double from_x = half - from_a.dist[x];
    const double w = tree.edge(e).weight;
    c.point = tree.point(e, tree.edge(e).u == x ? from_x / w : 1.0 - from_x / w);
  }
  return c;
}

TreeFPS::TreeFPS(Network tree) : net_(std::move(tree)) {
  const std::size_t n = net_.vertex_count();
  center_ = find_absolute_center(net_).point;

  dist_.assign(n, 0.0);
  vertex_subtree_.assign(n, kInvalidId);
  edge_subtree_.assign(net_.edge_count(), kInvalidId);
  std::vector<char> seen(n, 0);
  std::vector<VertexId> stack;
  std::uint32_t r = 0;
  if (center_.is_vertex()) {
    const VertexId c = center_.vertex;
    seen[c] = 1;
    for (const Incidence& in : net_.incident(c)) {
      metrics::build_step();
      dist_[in.neighbor] = net_.edge(in.edge).weight;
      vertex_subtree_[in.neighbor] = r;
      edge_subtree_[in.edge] = r++;
      seen[in.neighbor] = 1;
      stack.push_back(in.neighbor);
    }
  } else {
    const Edge& ce = net_.edge(center_.edge);
    dist_[ce.u] = center_.lambda * ce.weight;
    dist_[ce.v] = (1.0 - center_.lambda) * ce.weight;
    vertex_subtree_[ce.u] = 0;
    vertex_subtree_[ce.v] = 1;
    seen[ce.u] = seen[ce.v] = 1;
    stack = {ce.u, ce.v};
    r = 2;
  }
  while (!stack.empty()) {
    VertexId x = stack.back();
    stack.pop_back();
    for (const Incidence& in : net_.incident(x)) {
      metrics::build_step();
      if (seen[in.neighbor]) continue;
      seen[in.neighbor] = 1;
      dist_[in.neighbor] = dist_[x] + net_.edge(in.edge).weight;
      vertex_subtree_[in.neighbor] = vertex_subtree_[x];
      edge_subtree_[in.edge] = vertex_subtree_[x];
      stack.push_back(in.neighbor);
    }
  }
  center_ecc_ = *std::max_element(dist_.begin(), dist_.end());

  // Far leaves bucketed by sub-tree, ascending vertex id inside each bucket.
  far_count_.assign(r, 0);
  for (VertexId v = 0; v < n; ++v) {
    metrics::build_step();
    if (net_.degree(v) == 1 && dist_[v] >= center_ecc_ - kTieTolerance) ++far_count_[vertex_subtree_[v]];
  }
  far_begin_.assign(r + 1, 0);
  for (std::uint32_t i = 0; i < r; ++i) far_begin_[i + 1] = far_begin_[i] + far_count_[i];
  total_far_ = far_begin_[r];
  leaves_.resize(total_far_);
  std::vector<std::size_t> fill(far_begin_.begin(), far_begin_.end() - 1);
  for (VertexId v = 0; v < n; ++v) {
    if (net_.degree(v) == 1 && dist_[v] >= center_ecc_ - kTieTolerance) {
      leaves_[fill[vertex_subtree_[v]]++] = v;
    }
  }
  for (std::uint32_t i = 0; i < r; ++i) {
    if (far_count_[i] > 0) groups_.push_back({i, far_begin_[i], far_begin_[i + 1]});
  }
}

double TreeFPS::distance_to_center(const NetworkPoint& p) const {
  if (p.is_vertex()) return dist_[p.vertex];
  const Edge& e = net_.edge(p.edge);
  if (!center_.is_vertex() && center_.edge == p.edge) {
    return std::abs(p.lambda - center_.lambda) * e.weight;
  }
  return std::min(dist_[e.u] + p.lambda * e.weight, dist_[e.v] + (1.0 - p.lambda) * e.weight);
}

std::uint32_t TreeFPS::subtree_of(const NetworkPoint& p) const {
  if (p.is_vertex()) return vertex_subtree_[p.vertex];
  if (!center_.is_vertex() && center_.edge == p.edge) {
    if (p.lambda == center_.lambda) return kInvalidId;
    return p.lambda < center_.lambda ? 0 : 1;
  }
  return edge_subtree_[p.edge];
}

std::uint32_t TreeFPS::query_subtree(const NetworkPoint& p) const {
  if (distance_to_center(p) <= kTieTolerance) return kInvalidId;
  return subtree_of(p);
}

std::span<const VertexId> TreeFPS::far_leaves(std::uint32_t subtree) const {
  return {leaves_.data() + far_begin_[subtree], leaves_.data() + far_begin_[subtree + 1]};
}

FarthestSet TreeFPS::farthest(const NetworkPoint& p) const {
  std::vector<NetworkPoint> pts;
  for_each_farthest(p, [&](VertexId v) {
    pts.push_back(NetworkPoint::at_vertex(v));
    return true;
  });
  return make_farthest_set(net_, eccentricity(p), std::move(pts));
}

std::size_t TreeFPS::count_farthest(const NetworkPoint& p) const {
  metrics::query_step();
  const std::uint32_t skip = query_subtree(p);
  return skip == kInvalidId ? total_far_ : total_far_ - far_count_[skip];
}

}  // namespace netfar
