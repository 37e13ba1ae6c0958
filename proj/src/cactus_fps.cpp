#include "netfar/cactus_fps.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "netfar/instrumentation.hpp"

namespace netfar {

namespace {

std::string dummy_name(const std::string& hinge) { return "<cut " + hinge + ">"; }

// Largest distance from `source` into a branch bag whose vertices carry
// pendants of length pend[v].
double tree_reach(const Network& net, const Bag& bag, VertexId source, const std::vector<double>& pend,
                  std::vector<std::uint32_t>& slot) {
  const std::size_t k = bag.vertices.size();
  for (std::size_t i = 0; i < k; ++i) slot[bag.vertices[i]] = static_cast<std::uint32_t>(i);
  std::vector<std::size_t> offset(k + 1, 0);
  for (EdgeId e : bag.edges) {
    ++offset[slot[net.edge(e).u] + 1];
    ++offset[slot[net.edge(e).v] + 1];
  }
  for (std::size_t i = 0; i < k; ++i) offset[i + 1] += offset[i];
  std::vector<std::pair<std::uint32_t, double>> adj(offset[k]);
  std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
  for (EdgeId e : bag.edges) {
    metrics::build_step();
    const Edge& ed = net.edge(e);
    const std::uint32_t a = slot[ed.u], b = slot[ed.v];
    adj[fill[a]++] = {b, ed.weight};
    adj[fill[b]++] = {a, ed.weight};
  }
  std::vector<double> dist(k, -1.0);
  std::vector<std::uint32_t> stack{slot[source]};
  dist[slot[source]] = 0.0;
  double best = 0.0;
  while (!stack.empty()) {
    const std::uint32_t x = stack.back();
    stack.pop_back();
    best = std::max(best, dist[x] + pend[bag.vertices[x]]);
    for (std::size_t i = offset[x]; i < offset[x + 1]; ++i) {
      metrics::build_step();
      const auto [y, w] = adj[i];
      if (dist[y] >= 0.0) continue;
      dist[y] = dist[x] + w;
      stack.push_back(y);
    }
  }
  return best;
}

// Same for a block bag, whose vertices are in cyclic order.
double cycle_reach(const Network& net, const Bag& bag, VertexId source, const std::vector<double>& pend) {
  const std::size_t k = bag.vertices.size();
  std::vector<double> prefix(k, 0.0);
  double total = 0.0;
  std::size_t s = 0;
  for (std::size_t i = 0; i < k; ++i) {
    metrics::build_step();
    prefix[i] = total;
    total += net.edge(bag.edges[i]).weight;
    if (bag.vertices[i] == source) s = i;
  }
  double best = 0.5 * total;
  for (std::size_t i = 0; i < k; ++i) {
    metrics::build_step();
    const double along = std::abs(prefix[i] - prefix[s]);
    best = std::max(best, std::min(along, total - along) + pend[bag.vertices[i]]);
  }
  return best;
}

}  // namespace

CactusFPS::CactusFPS(Network net, CactusOptions options)
    : net_(std::move(net)), dec_(decompose(net_)), options_(options) {
  arcs_.assign(dec_.links.size(), ArcAnnotation{});
  records_.assign(dec_.hinges.size(), HingeRecord{});
  ranked_.assign(dec_.hinges.size(), {});
  bags_.resize(dec_.bags.size());
  link_dummy_.assign(dec_.links.size(), kInvalidId);
  local_edge_.assign(net_.edge_count(), kInvalidId);
  build_order();
  pass_bottom_up();
  pass_top_down();
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    if (*it != root_) place_shortcut(parent_link_[*it]);
  }
  for (std::uint32_t b : order_) {
    const std::uint32_t up = parent_link_[b];
    const std::uint32_t ph = up == kInvalidId ? kInvalidId : dec_.links[up].hinge;
    for (std::uint32_t l : dec_.bags[b].links) {
      if (dec_.links[l].hinge != ph) place_shortcut(l);
    }
  }
}

void CactusFPS::build_order() {
  for (std::uint32_t b = 1; b < dec_.bags.size(); ++b) {
    if (dec_.bags[b].edges.size() > dec_.bags[root_].edges.size()) root_ = b;
  }
  parent_link_.assign(dec_.bags.size(), kInvalidId);
  hinge_parent_.assign(dec_.hinges.size(), kInvalidId);
  order_.assign({root_});
  for (std::size_t i = 0; i < order_.size(); ++i) {
    const std::uint32_t b = order_[i];
    const std::uint32_t up = parent_link_[b];
    const std::uint32_t ph = up == kInvalidId ? kInvalidId : dec_.links[up].hinge;
    for (std::uint32_t l : dec_.bags[b].links) {
      const std::uint32_t h = dec_.links[l].hinge;
      if (h == ph) continue;
      hinge_parent_[h] = l;
      for (std::uint32_t l2 : dec_.hinges[h].links) {
        metrics::build_step();
        if (l2 == l) continue;
        parent_link_[dec_.links[l2].bag] = l2;
        order_.push_back(dec_.links[l2].bag);
      }
    }
  }
}

void CactusFPS::pass_bottom_up() {
  std::vector<double> pend(net_.vertex_count(), 0.0);
  std::vector<std::uint32_t> slot(net_.vertex_count(), 0);
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    const std::uint32_t b = *it;
    const Bag& bag = dec_.bags[b];
    const std::uint32_t up = parent_link_[b];
    const std::uint32_t ph = up == kInvalidId ? kInvalidId : dec_.links[up].hinge;
    for (std::uint32_t l : bag.links) {
      const std::uint32_t h = dec_.links[l].hinge;
      if (h == ph) continue;
      double best = 0.0;
      for (std::uint32_t l2 : dec_.hinges[h].links) {
        metrics::build_step();
        if (l2 != l) best = std::max(best, arcs_[l2].into_co_bag_cut);
      }
      arcs_[l].into_bag_cut = best;
      pend[dec_.hinges[h].vertex] = best;
    }
    if (up != kInvalidId) {
      const VertexId source = dec_.hinges[ph].vertex;
      arcs_[up].into_co_bag_cut = bag.kind == BagKind::Branch ? tree_reach(net_, bag, source, pend, slot)
                                                              : cycle_reach(net_, bag, source, pend);
    }
    for (std::uint32_t l : bag.links) pend[dec_.hinges[dec_.links[l].hinge].vertex] = 0.0;
  }
}

void CactusFPS::pass_top_down() {
  for (std::uint32_t l : dec_.bags[root_].links) arcs_[l].into_bag_cut += options_.pendant_perturbation;
  for (std::uint32_t b : order_) {
    const std::uint32_t up = parent_link_[b];
    std::uint32_t ph = kInvalidId;
    if (up != kInvalidId) {
      ph = dec_.links[up].hinge;
      // Largest co-bag-cut value at the parent hinge other than this bag.
      const HingeRecord& rec = records_[ph];
      arcs_[up].into_bag_cut = rec.first_bag != b ? rec.first : rec.second;
    }
    build_perspective(b);
    for (std::uint32_t l : dec_.bags[b].links) {
      const std::uint32_t h = dec_.links[l].hinge;
      if (h == ph) continue;
      arcs_[l].into_co_bag_cut = dummy_eccentricity(l) - arcs_[l].into_bag_cut;
      finish_hinge(h);
    }
  }
}

void CactusFPS::finish_hinge(std::uint32_t hinge) {
  std::vector<std::uint32_t>& ranked = ranked_[hinge];
  ranked = dec_.hinges[hinge].links;
  std::sort(ranked.begin(), ranked.end(), [&](std::uint32_t a, std::uint32_t b) {
    metrics::build_step();
    if (arcs_[a].into_co_bag_cut != arcs_[b].into_co_bag_cut)
      return arcs_[a].into_co_bag_cut > arcs_[b].into_co_bag_cut;
    return dec_.links[a].bag < dec_.links[b].bag;
  });
  HingeRecord& rec = records_[hinge];
  rec.first = arcs_[ranked[0]].into_co_bag_cut;
  rec.first_bag = dec_.links[ranked[0]].bag;
  rec.second = arcs_[ranked[1]].into_co_bag_cut;
  rec.second_bag = dec_.links[ranked[1]].bag;
}

void CactusFPS::build_perspective(std::uint32_t b) {
  const Bag& bag = dec_.bags[b];
  Perspective& p = bags_[b];
  p.vertices = bag.vertices;
  std::sort(p.vertices.begin(), p.vertices.end());
  p.edges = bag.edges;
  std::sort(p.edges.begin(), p.edges.end());
  const auto local = [&](VertexId v) {
    return static_cast<VertexId>(std::lower_bound(p.vertices.begin(), p.vertices.end(), v) - p.vertices.begin());
  };
  std::vector<std::string> names;
  names.reserve(p.vertices.size() + bag.links.size());
  for (VertexId v : p.vertices) names.push_back(net_.name(v));
  std::vector<Edge> edges;
  edges.reserve(p.edges.size() + bag.links.size());
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    metrics::build_step();
    const Edge& ed = net_.edge(p.edges[i]);
    edges.push_back({local(ed.u), local(ed.v), ed.weight});
    local_edge_[p.edges[i]] = static_cast<EdgeId>(i);
  }
  for (std::uint32_t l : bag.links) {
    metrics::build_step();
    const VertexId h = dec_.hinges[dec_.links[l].hinge].vertex;
    const auto dummy = static_cast<VertexId>(names.size());
    names.push_back(dummy_name(net_.name(h)));
    edges.push_back({local(h), dummy, arcs_[l].into_bag_cut});
    link_dummy_[l] = dummy;
    p.dummy_link.push_back(l);
  }
  Network persp(std::move(names), std::move(edges));
  if (bag.kind == BagKind::Branch) {
    p.kind = PerspectiveKind::Tree;
    p.tree.emplace(std::move(persp));
  } else if (!bag.links.empty()) {
    p.kind = PerspectiveKind::UniCyclic;
    p.uni.emplace(std::move(persp));
  } else {
    p.kind = PerspectiveKind::Cycle;
    p.cycle_net.emplace(std::move(persp));
    p.cycle.emplace(*p.cycle_net, cycle_layout(*p.cycle_net));
  }
}

template <class Fn>
void CactusFPS::for_each_tied_arc(std::uint32_t link, Fn&& fn) const {
  const std::uint32_t from = dec_.links[link].bag;
  const double threshold = arcs_[link].into_bag_cut - kTieTolerance;
  for (std::uint32_t l : ranked_[dec_.links[link].hinge]) {
    metrics::query_step();
    if (dec_.links[l].bag == from) continue;
    if (arcs_[l].into_co_bag_cut < threshold) return;
    if (!fn(l)) return;
  }
}

void CactusFPS::place_shortcut(std::uint32_t link) {
  const Perspective& p = bags_[dec_.links[link].bag];
  const std::size_t real = p.vertices.size();
  bool inside = false, several = false;
  std::uint32_t only = kInvalidId;
  local_farthest(p, NetworkPoint::at_vertex(link_dummy_[link]), [&](const NetworkPoint& lp) {
    metrics::build_step();
    if (!lp.is_vertex() || lp.vertex < real) {
      inside = true;
      return false;
    }
    const std::uint32_t l = p.dummy_link[lp.vertex - real];
    if (only == kInvalidId || only == l) {
      only = l;
      return true;
    }
    several = true;
    return false;
  });
  ArcAnnotation& arc = arcs_[link];
  arc.shortcut = link;
  if (inside || several || only == kInvalidId) return;
  std::uint32_t next = kInvalidId;
  int tied = 0;
  for_each_tied_arc(only, [&](std::uint32_t l) {
    next = l;
    return ++tied < 2;
  });
  if (tied == 1) arc.shortcut = arcs_[next].shortcut;
}

std::uint32_t CactusFPS::link_of(std::uint32_t hinge, std::uint32_t bag) const {
  for (std::uint32_t l : dec_.hinges[hinge].links) {
    if (dec_.links[l].bag == bag) return l;
  }
  return kInvalidId;
}

std::uint32_t CactusFPS::bag_of(const NetworkPoint& q) const {
  return dec_.edge_bag[q.is_vertex() ? net_.display_form(q).first : q.edge];
}

NetworkPoint CactusFPS::to_local(std::uint32_t bag, const NetworkPoint& q) const {
  const Perspective& p = bags_[bag];
  if (!q.is_vertex()) return NetworkPoint{local_edge_[q.edge], kInvalidId, q.lambda};
  const auto it = std::lower_bound(p.vertices.begin(), p.vertices.end(), q.vertex);
  if (it == p.vertices.end() || *it != q.vertex) throw InvalidPointError("point is not on the bag");
  return NetworkPoint::at_vertex(static_cast<VertexId>(it - p.vertices.begin()));
}

double CactusFPS::local_eccentricity(const Perspective& p, const NetworkPoint& local) const {
  switch (p.kind) {
    case PerspectiveKind::Tree:
      return p.tree->eccentricity(local);
    case PerspectiveKind::UniCyclic:
      return p.uni->eccentricity(local);
    case PerspectiveKind::Cycle:
      metrics::query_step();
      return p.cycle->eccentricity();
  }
  return 0.0;
}

bool CactusFPS::local_farthest(const Perspective& p, const NetworkPoint& local, PointVisitor visit) const {
  switch (p.kind) {
    case PerspectiveKind::Tree:
      return p.tree->for_each_farthest(local, [&](VertexId v) { return visit(NetworkPoint::at_vertex(v)); });
    case PerspectiveKind::UniCyclic:
      return p.uni->for_each_farthest(local, visit);
    case PerspectiveKind::Cycle:
      return visit(p.cycle->farthest_point(local));
  }
  return true;
}

double CactusFPS::dummy_eccentricity(std::uint32_t link) const {
  return local_eccentricity(bags_[dec_.links[link].bag], NetworkPoint::at_vertex(link_dummy_[link]));
}

double CactusFPS::eccentricity_in_bag(std::uint32_t bag, const NetworkPoint& q) const {
  return local_eccentricity(bags_[bag], to_local(bag, q));
}

double CactusFPS::eccentricity(const NetworkPoint& q) const { return eccentricity_in_bag(bag_of(q), q); }

bool CactusFPS::for_each_farthest(const NetworkPoint& q, PointVisitor visit,
                                  std::vector<std::uint32_t>* visited) const {
  std::vector<std::uint32_t> pending;
  const auto report = [&](std::uint32_t bag, const NetworkPoint& lp) {
    const Perspective& p = bags_[bag];
    if (!lp.is_vertex()) return visit(NetworkPoint{p.edges[lp.edge], kInvalidId, lp.lambda});
    if (lp.vertex >= p.vertices.size()) {
      pending.push_back(p.dummy_link[lp.vertex - p.vertices.size()]);
      return true;
    }
    return visit(NetworkPoint::at_vertex(p.vertices[lp.vertex]));
  };
  const std::uint32_t start = bag_of(q);
  metrics::bag_visit();
  if (visited) visited->push_back(start);
  if (!local_farthest(bags_[start], to_local(start, q),
                      [&](const NetworkPoint& lp) { return report(start, lp); }))
    return false;
  bool go_on = true;
  while (go_on && !pending.empty()) {
    const std::uint32_t link = pending.back();
    pending.pop_back();
    for_each_tied_arc(link, [&](std::uint32_t l) {
      const std::uint32_t target = arcs_[l].shortcut;
      const std::uint32_t bag = dec_.links[target].bag;
      metrics::bag_visit();
      if (visited) visited->push_back(bag);
      go_on = local_farthest(bags_[bag], NetworkPoint::at_vertex(link_dummy_[target]),
                             [&](const NetworkPoint& lp) { return report(bag, lp); });
      return go_on;
    });
  }
  return go_on;
}

FarthestSet CactusFPS::farthest(const NetworkPoint& q, std::vector<std::uint32_t>* visited) const {
  std::vector<NetworkPoint> pts;
  for_each_farthest(
      q,
      [&](const NetworkPoint& p) {
        pts.push_back(p);
        return true;
      },
      visited);
  return make_farthest_set(net_, eccentricity(q), std::move(pts));
}

std::vector<std::vector<double>> CactusFPS::profile_breakpoints() const {
  std::vector<std::vector<double>> out(net_.edge_count());
  for (const Perspective& p : bags_) {
    if (p.kind == PerspectiveKind::Tree) {
      const NetworkPoint& c = p.tree->center();
      if (!c.is_vertex() && c.edge < p.edges.size()) out[p.edges[c.edge]].push_back(c.lambda);
    } else if (p.kind == PerspectiveKind::UniCyclic) {
      auto local = p.uni->profile_breakpoints();
      for (std::size_t i = 0; i < p.edges.size(); ++i) {
        auto& dst = out[p.edges[i]];
        dst.insert(dst.end(), local[i].begin(), local[i].end());
      }
    }
  }
  return out;
}

CenterSet CactusFPS::continuous_centers() const {
  auto breaks = profile_breakpoints();
  std::vector<std::vector<ProfileSample>> profiles(net_.edge_count());
  for (EdgeId e = 0; e < net_.edge_count(); ++e) {
    std::vector<double>& lambdas = breaks[e];
    std::erase_if(lambdas, [](double x) { return x <= kSnapTolerance || x >= 1.0 - kSnapTolerance; });
    lambdas.push_back(0.0);
    lambdas.push_back(1.0);
    std::sort(lambdas.begin(), lambdas.end());
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
    for (double lambda : lambdas) profiles[e].push_back({lambda, eccentricity(net_.point(e, lambda))});
  }
  return center_set_from_profiles(net_, profiles);
}

}  // namespace netfar
