#include "netfar/unicyclic_fps.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>

#include "netfar/instrumentation.hpp"

namespace netfar {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double cyclic_distance(double a, double b, double total) {
  double d = std::fmod(std::abs(a - b), total);
  return std::min(d, total - d);
}

std::string dummy_name(const std::string& hinge) { return "<exterior " + hinge + ">"; }

}  // namespace

UniDecomposition decompose_unicyclic(const Network& net) {
  const std::size_t n = net.vertex_count();
  if (net.edge_count() != n) throw ClassError("network is not uni-cyclic");
  std::vector<std::size_t> degree(n);
  std::vector<VertexId> queue;
  for (VertexId v = 0; v < n; ++v) {
    degree[v] = net.degree(v);
    if (degree[v] == 1) queue.push_back(v);
  }
  std::vector<char> peeled(n, 0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId x = queue[head];
    peeled[x] = 1;
    for (const Incidence& in : net.incident(x)) {
      metrics::build_step();
      if (!peeled[in.neighbor] && --degree[in.neighbor] == 1) queue.push_back(in.neighbor);
    }
  }
  if (queue.empty()) throw ClassError("a pure cycle has no branches; use the cycle structure");

  UniDecomposition d;
  VertexId start = 0;
  while (peeled[start]) ++start;
  auto on_cycle = [&](const Incidence& in) { return !peeled[in.neighbor]; };
  VertexId at = start;
  EdgeId came = kInvalidId;
  VertexId best = kInvalidId;
  for (const Incidence& in : net.incident(start)) {
    if (on_cycle(in) && (best == kInvalidId || in.neighbor < best)) best = in.neighbor;
  }
  do {
    metrics::build_step();
    EdgeId step = kInvalidId;
    VertexId next = kInvalidId;
    for (const Incidence& in : net.incident(at)) {
      if (!on_cycle(in) || in.edge == came) continue;
      if (at == start && in.neighbor != best) continue;
      step = in.edge;
      next = in.neighbor;
      break;
    }
    d.cycle.vertices.push_back(at);
    d.cycle.edges.push_back(step);
    came = step;
    at = next;
  } while (at != start);

  d.edge_branch.assign(net.edge_count(), kInvalidId);
  d.vertex_branch.assign(n, kInvalidId);
  std::vector<VertexId> stack;
  for (std::size_t i = 0; i < d.cycle.vertices.size(); ++i) {
    const VertexId hinge = d.cycle.vertices[i];
    if (net.degree(hinge) == 2) continue;
    const auto id = static_cast<std::uint32_t>(d.branches.size());
    UniDecomposition::Branch br;
    br.hinge = hinge;
    br.cycle_index = i;
    br.vertices.push_back(hinge);
    d.vertex_branch[hinge] = id;
    stack.assign({hinge});
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      for (const Incidence& in : net.incident(x)) {
        metrics::build_step();
        if (!peeled[in.neighbor] || d.edge_branch[in.edge] != kInvalidId) continue;
        d.edge_branch[in.edge] = id;
        d.vertex_branch[in.neighbor] = id;
        br.edges.push_back(in.edge);
        br.vertices.push_back(in.neighbor);
        stack.push_back(in.neighbor);
      }
    }
    std::sort(br.vertices.begin(), br.vertices.end());
    std::sort(br.edges.begin(), br.edges.end());
    d.branches.push_back(std::move(br));
  }
  return d;
}

bool dominated(double total_weight, const PendantSite& i, const PendantSite& j) {
  const double half = 0.5 * total_weight;
  const double own = half + i.height;
  const double other = cyclic_distance(i.position + half, j.position, total_weight) + j.height;
  return own < other - kTieTolerance;
}

RelevanceResult relevant_vertices(double total_weight, std::span<const PendantSite> sites,
                                  bool check_invariant) {
  const std::size_t l = sites.size();
  RelevanceResult out;
  if (l == 0) return out;
  std::vector<std::uint32_t> prev(l), next(l);
  std::vector<char> alive(l, 1), marked(l, 0);
  for (std::uint32_t i = 0; i < l; ++i) {
    prev[i] = static_cast<std::uint32_t>((i + l - 1) % l);
    next[i] = static_cast<std::uint32_t>((i + 1) % l);
  }
  auto less = [&](std::uint32_t a, std::uint32_t b) {
    return a != b && dominated(total_weight, sites[a], sites[b]);
  };
  auto remove = [&](std::uint32_t x) {
    next[prev[x]] = next[x];
    prev[next[x]] = prev[x];
    alive[x] = 0;
  };
  auto invariant_ok = [&] {
    for (std::uint32_t m = 0; m < l; ++m) {
      if (!alive[m] || !marked[m]) continue;
      if (less(prev[m], m) || less(next[m], m) || less(m, prev[m]) || less(m, next[m])) return false;
    }
    return true;
  };

  std::uint32_t t = 0;
  while (!marked[t]) {
    ++out.steps;
    metrics::build_step();
    const std::uint32_t p = prev[t], s = next[t];
    if (less(t, p) || less(t, s)) {
      t = s;
      remove(prev[t]);
    } else if (less(p, t)) {
      remove(p);
    } else if (less(s, t)) {
      remove(s);
    } else {
      marked[t] = 1;
      if (check_invariant && !invariant_ok()) out.invariant_held = false;
      t = next[t];
    }
  }
  for (std::uint32_t i = 0; i < l; ++i) {
    if (alive[i]) out.relevant.push_back(i);
  }
  return out;
}

UniFPS::UniFPS(Network net)
    : net_(std::move(net)), dec_(decompose_unicyclic(net_)), cycle_(net_, dec_.cycle) {
  const double total = cycle_.total_weight();
  const double half = 0.5 * total;
  const std::size_t l = dec_.branches.size();

  local_vertex_.assign(net_.vertex_count(), kInvalidId);
  local_edge_.assign(net_.edge_count(), kInvalidId);
  std::vector<double> position(l), height(l);
  std::vector<double> depth(net_.vertex_count(), 0.0);
  std::vector<char> seen(net_.vertex_count(), 0);
  for (std::size_t b = 0; b < l; ++b) {
    const auto& br = dec_.branches[b];
    for (std::size_t i = 0; i < br.vertices.size(); ++i) local_vertex_[br.vertices[i]] = static_cast<VertexId>(i);
    for (std::size_t i = 0; i < br.edges.size(); ++i) local_edge_[br.edges[i]] = static_cast<EdgeId>(i);
    position[b] = cycle_.vertex_position(br.cycle_index);
    // Height: farthest vertex of the branch from its hinge.
    std::vector<VertexId> stack{br.hinge};
    seen[br.hinge] = 1;
    depth[br.hinge] = 0.0;
    double h = 0.0;
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      h = std::max(h, depth[x]);
      for (const Incidence& in : net_.incident(x)) {
        metrics::build_step();
        if (dec_.edge_branch[in.edge] != b || seen[in.neighbor]) continue;
        seen[in.neighbor] = 1;
        depth[in.neighbor] = depth[x] + net_.edge(in.edge).weight;
        stack.push_back(in.neighbor);
      }
    }
    height[b] = h;
  }

  // Exterior eccentricity of every hinge: the farthest other branch
  // clockwise and counter-clockwise within half the cycle, via two sliding
  // window maxima over the doubled hinge sequence.
  std::vector<double> exterior(l, half);
  {
    std::vector<double> p(2 * l);
    for (std::size_t k = 0; k < 2 * l; ++k) p[k] = position[k % l] + (k >= l ? total : 0.0);
    auto h = [&](std::size_t k) { return height[k % l]; };
    std::deque<std::size_t> window;
    std::size_t right = 1;
    for (std::size_t i = 0; i < l; ++i) {
      right = std::max(right, i + 1);
      while (right < i + l && p[right] - p[i] <= half) {
        metrics::build_step();
        while (!window.empty() && p[window.back()] + h(window.back()) <= p[right] + h(right)) window.pop_back();
        window.push_back(right++);
      }
      while (!window.empty() && window.front() <= i) window.pop_front();
      if (!window.empty()) exterior[i] = std::max(exterior[i], p[window.front()] + h(window.front()) - p[i]);
    }
    window.clear();
    for (std::size_t k = 1; k < l; ++k) {
      while (!window.empty() && h(window.back()) - p[window.back()] <= h(k) - p[k]) window.pop_back();
      window.push_back(k);
    }
    for (std::size_t i = 0; i < l; ++i) {
      if (i > 0) {
        const std::size_t k = i + l - 1;
        metrics::build_step();
        while (!window.empty() && h(window.back()) - p[window.back()] <= h(k) - p[k]) window.pop_back();
        window.push_back(k);
      }
      while (!window.empty() && (window.front() <= i || p[i + l] - p[window.front()] > half)) {
        metrics::build_step();
        window.pop_front();
      }
      if (!window.empty()) {
        exterior[i] = std::max(exterior[i], h(window.front()) - p[window.front()] + p[i + l]);
      }
    }
  }

  for (std::size_t b = 0; b < l; ++b) {
    const auto& br = dec_.branches[b];
    std::vector<std::string> names;
    names.reserve(br.vertices.size() + 1);
    for (VertexId v : br.vertices) names.push_back(net_.name(v));
    names.push_back(dummy_name(net_.name(br.hinge)));
    std::vector<Edge> edges;
    edges.reserve(br.edges.size() + 1);
    for (EdgeId e : br.edges) {
      metrics::build_step();
      const Edge& ed = net_.edge(e);
      edges.push_back({local_vertex_[ed.u], local_vertex_[ed.v], ed.weight});
    }
    const auto dummy = static_cast<VertexId>(br.vertices.size());
    edges.push_back({local_vertex_[br.hinge], dummy, exterior[b]});
    branches_.push_back(Branch{br.hinge, position[b], height[b], exterior[b], br.vertices, br.edges,
                               local_vertex_[br.hinge], dummy,
                               TreeFPS(Network(std::move(names), std::move(edges)))});
  }

  std::vector<PendantSite> sites(l);
  for (std::size_t b = 0; b < l; ++b) sites[b] = {position[b], height[b]};
  relevance_ = relevant_vertices(total, sites);
  relevant_rank_.assign(l, kInvalidId);
  const auto& rel = relevance_.relevant;
  for (std::size_t k = 0; k < rel.size(); ++k) relevant_rank_[rel[k]] = static_cast<std::uint32_t>(k);

  // Farthest-branch chains between the peaks of consecutive relevant branches.
  for (std::size_t k = 0; k < rel.size(); ++k) {
    metrics::build_step();
    const std::uint32_t r = rel[k];
    const double peak = position[r] + half;
    chains_.push_back({peak, r});
    if (rel.size() == 1) break;
    const std::uint32_t rn = rel[(k + 1) % rel.size()];
    const double span = k + 1 < rel.size() ? position[rn] - position[r] : position[rn] + total - position[r];
    auto g = [&](double x) {
      return height[r] - height[rn] + std::abs(half - x) - std::abs(half - span + x);
    };
    std::array<double, 4> xs{0.0, std::clamp(half, 0.0, span), std::clamp(span - half, 0.0, span), span};
    std::sort(xs.begin(), xs.end());
    double cut = span;
    if (g(0.0) <= 0.0) {
      cut = 0.0;
    } else {
      for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
        const double ga = g(xs[j]), gb = g(xs[j + 1]);
        if (ga > 0.0 && gb <= 0.0) {
          cut = xs[j] + ga * (xs[j + 1] - xs[j]) / (ga - gb);
          break;
        }
      }
    }
    chains_.push_back({std::max(peak + cut, peak), rn});
  }
  for (std::size_t k = 1; k < chains_.size(); ++k) {
    chains_[k].start = std::max(chains_[k].start, chains_[k - 1].start);
  }

  for (std::uint32_t b = 0; b < l; ++b) {
    if (height[b] <= exterior[b] + kTieTolerance) continue;
    BadCase bad;
    bad.branch = b;
    bad.antipode = half >= exterior[b] - kTieTolerance;
    for (std::uint32_t j = 0; j < l; ++j) {
      metrics::build_step();
      if (j != b && cyclic_distance(position[b], position[j], total) + height[j] >= exterior[b] - kTieTolerance) {
        bad.branches.push_back(j);
      }
    }
    bad_ = std::move(bad);
    break;
  }
}

double UniFPS::branch_distance(double s, std::uint32_t b) const {
  metrics::query_step();
  return cyclic_distance(s, branches_[b].position, cycle_.total_weight()) + branches_[b].height;
}

std::size_t UniFPS::chain_at(double s) const {
  const double first = chains_.front().start;
  if (s < first) s += cycle_.total_weight();
  auto it = std::upper_bound(chains_.begin(), chains_.end(), s, [](double value, const Chain& c) {
    metrics::comparison();
    return value < c.start;
  });
  return it == chains_.begin() ? 0 : static_cast<std::size_t>(it - chains_.begin()) - 1;
}

template <class Fn>
void UniFPS::for_each_tied_branch(double s, double threshold, std::size_t chain, Fn&& fn) const {
  const std::uint32_t label = chains_[chain].branch;
  if (branch_distance(s, label) < threshold) return;
  if (!fn(label)) return;
  const auto& rel = relevance_.relevant;
  const std::size_t count = rel.size();
  const std::size_t rank = relevant_rank_[label];
  std::size_t forward = 0;
  for (std::size_t k = 1; k < count; ++k) {
    const std::uint32_t b = rel[(rank + k) % count];
    if (branch_distance(s, b) < threshold) break;
    forward = k;
    if (!fn(b)) return;
  }
  for (std::size_t k = 1; k + forward < count; ++k) {
    const std::uint32_t b = rel[(rank + count - k) % count];
    if (branch_distance(s, b) < threshold) break;
    if (!fn(b)) return;
  }
}

UniFPS::BranchHits UniFPS::farthest_branches(double s) const {
  BranchHits hits;
  const std::size_t c = chain_at(s);
  hits.distance = branch_distance(s, chains_[c].branch);
  for_each_tied_branch(s, hits.distance - kTieTolerance, c, [&](std::uint32_t b) {
    hits.branches.push_back(b);
    return true;
  });
  return hits;
}

NetworkPoint UniFPS::local_point(const Branch& br, const NetworkPoint& q) const {
  (void)br;
  if (q.is_vertex()) return NetworkPoint::at_vertex(local_vertex_[q.vertex]);
  return NetworkPoint{local_edge_[q.edge], kInvalidId, q.lambda};
}

double UniFPS::eccentricity(const NetworkPoint& q) const {
  const std::uint32_t b = q.is_vertex() ? dec_.vertex_branch[q.vertex] : dec_.edge_branch[q.edge];
  if (b != kInvalidId) return branches_[b].tree.eccentricity(local_point(branches_[b], q));
  const double s = *cycle_.position_of(q);
  const double d = branch_distance(s, chains_[chain_at(s)].branch);
  return std::max(d, cycle_.eccentricity());
}

bool UniFPS::cascade_into(std::uint32_t b, PointVisitor& visit) const {
  const Branch& br = branches_[b];
  return br.tree.for_each_farthest(NetworkPoint::at_vertex(br.dummy), [&](VertexId leaf) {
    return visit(NetworkPoint::at_vertex(br.vertices[leaf]));
  });
}

bool UniFPS::from_cycle(double s, PointVisitor& visit, std::uint32_t skip) const {
  const std::size_t c = chain_at(s);
  const double d = branch_distance(s, chains_[c].branch);
  const double ecc = std::max(d, cycle_.eccentricity());
  if (cycle_.eccentricity() >= ecc - kTieTolerance) {
    if (!visit(cycle_.farthest_point_at(s))) return false;
  }
  bool go_on = true;
  for_each_tied_branch(s, ecc - kTieTolerance, c, [&](std::uint32_t b) {
    if (b == skip) return true;
    go_on = cascade_into(b, visit);
    return go_on;
  });
  return go_on;
}

bool UniFPS::exterior_of(std::uint32_t b, PointVisitor& visit) const {
  if (bad_ && bad_->branch == b) {
    if (bad_->antipode && !visit(cycle_.farthest_point_at(branches_[b].position))) return false;
    for (std::uint32_t j : bad_->branches) {
      if (!cascade_into(j, visit)) return false;
    }
    return true;
  }
  return from_cycle(branches_[b].position, visit, b);
}

bool UniFPS::for_each_farthest(const NetworkPoint& q, PointVisitor visit) const {
  const std::uint32_t b = q.is_vertex() ? dec_.vertex_branch[q.vertex] : dec_.edge_branch[q.edge];
  if (b == kInvalidId) return from_cycle(*cycle_.position_of(q), visit, kInvalidId);
  const Branch& br = branches_[b];
  return br.tree.for_each_farthest(local_point(br, q), [&](VertexId leaf) {
    if (leaf == br.dummy) return exterior_of(b, visit);
    return visit(NetworkPoint::at_vertex(br.vertices[leaf]));
  });
}

FarthestSet UniFPS::farthest(const NetworkPoint& q) const {
  std::vector<NetworkPoint> pts;
  for_each_farthest(q, [&](const NetworkPoint& p) {
    pts.push_back(p);
    return true;
  });
  return make_farthest_set(net_, eccentricity(q), std::move(pts));
}

std::vector<std::vector<double>> UniFPS::profile_breakpoints() const {
  std::vector<std::vector<double>> out(net_.edge_count());
  for (const Branch& br : branches_) {
    const NetworkPoint& c = br.tree.center();
    if (!c.is_vertex() && c.edge < br.edges.size()) out[br.edges[c.edge]].push_back(c.lambda);
  }
  const double total = cycle_.total_weight();
  const double half = 0.5 * total;
  std::vector<double> positions;
  for (std::uint32_t r : relevance_.relevant) {
    const Branch& br = branches_[r];
    positions.push_back(br.position);
    positions.push_back(br.position + half);
    if (br.height < half) {
      positions.push_back(br.position + half - br.height);
      positions.push_back(br.position + half + br.height);
    }
  }
  for (const Chain& ch : chains_) positions.push_back(ch.start);
  for (double s : positions) {
    s = std::fmod(s, total);
    if (s < 0) s += total;
    const NetworkPoint p = cycle_.point_at(s);
    if (!p.is_vertex()) out[p.edge].push_back(p.lambda);
  }
  return out;
}

}  // namespace netfar
