#include "netfar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "netfar/generator.hpp"
#include "netfar/oracle.hpp"

namespace netfar::verify {

namespace {

std::string describe(const Network& net, const NetworkPoint& p) {
  const auto [e, lambda] = net.display_form(p);
  std::ostringstream os;
  os.precision(12);
  os << "(" << net.name(net.edge(e).u) << "," << net.name(net.edge(e).v) << "," << lambda << ")";
  return os.str();
}

std::string describe(const Network& net, const FarthestSet& s) {
  std::ostringstream os;
  os.precision(12);
  os << s.eccentricity << " {";
  for (const NetworkPoint& p : s.points) os << " " << describe(net, p);
  os << " }";
  return os.str();
}

// Edges of the component of `start` over the edges accepted by keep.
template <class Keep>
std::vector<char> component_edges(const Network& net, VertexId start, Keep keep) {
  std::vector<char> in(net.edge_count(), 0), seen(net.vertex_count(), 0);
  std::vector<VertexId> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    for (const Incidence& inc : net.incident(x)) {
      if (!keep(inc.edge) || in[inc.edge]) continue;
      in[inc.edge] = 1;
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = 1;
        stack.push_back(inc.neighbor);
      }
    }
  }
  return in;
}

double eccentricity_within(const Network& net, const std::vector<char>& keep, VertexId v) {
  std::vector<VertexId> index(net.vertex_count(), kInvalidId);
  std::vector<std::string> names;
  std::vector<Edge> edges;
  const auto id = [&](VertexId x) {
    if (index[x] == kInvalidId) {
      index[x] = static_cast<VertexId>(names.size());
      names.push_back(net.name(x));
    }
    return index[x];
  };
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (keep[e]) edges.push_back({id(net.edge(e).u), id(net.edge(e).v), net.edge(e).weight});
  }
  const Network sub(std::move(names), std::move(edges));
  return oracle::eccentricity(sub, NetworkPoint::at_vertex(index[v]));
}

std::vector<char> bag_cut_edges(const CactusFPS& fps, std::uint32_t link) {
  const BlockCutDecomposition& dec = fps.decomposition();
  const std::uint32_t bag = dec.links[link].bag;
  const VertexId h = dec.hinges[dec.links[link].hinge].vertex;
  return component_edges(fps.network(), h, [&](EdgeId e) { return dec.edge_bag[e] != bag; });
}

bool close(double a, double b) { return std::abs(a - b) <= kTieTolerance; }

std::vector<char> red_bags(const CactusFPS& fps, const FarthestSet& set) {
  const BlockCutDecomposition& dec = fps.decomposition();
  std::vector<char> red(dec.bags.size(), 0);
  for (const NetworkPoint& p : set.points) {
    if (!p.is_vertex()) {
      red[dec.edge_bag[p.edge]] = 1;
      continue;
    }
    for (const Incidence& inc : fps.network().incident(p.vertex)) red[dec.edge_bag[inc.edge]] = 1;
  }
  return red;
}

}  // namespace

std::vector<NetworkPoint> probe_points(const Network& net, std::size_t interior, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<NetworkPoint> pts;
  for (VertexId v = 0; v < net.vertex_count(); ++v) pts.push_back(NetworkPoint::at_vertex(v));
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    pts.push_back(net.point(e, 0.5));
    for (std::size_t k = 0; k < interior; ++k) pts.push_back(net.point(e, rng.uniform_real()));
  }
  return pts;
}

std::optional<std::string> check_instance(const FarthestIndex& index, const std::vector<NetworkPoint>& probes,
                                          bool centers) {
  const Network& net = index.network();
  for (const NetworkPoint& q : probes) {
    const FarthestSet truth = oracle::farthest_points(net, q);
    const double ecc = index.eccentricity(q);
    if (!close(ecc, truth.eccentricity)) {
      std::ostringstream os;
      os.precision(12);
      os << "ecc at " << describe(net, q) << ": " << ecc << " expected " << truth.eccentricity;
      return os.str();
    }
    const FarthestSet got = index.farthest(q);
    if (!equivalent(net, got, truth)) {
      return "farthest at " + describe(net, q) + ": " + describe(net, got) + " expected " + describe(net, truth);
    }
    if (index.count_farthest(q) != truth.points.size()) return "count at " + describe(net, q);
  }
  if (centers) {
    const CenterSet got = index.centers();
    const CenterSet truth = oracle::center_set(net);
    if (!equivalent(net, got, truth)) {
      std::ostringstream os;
      os.precision(12);
      os << "center set: min " << got.min_eccentricity << " (" << got.vertices.size() << " vertices, "
         << got.segments.size() << " segments) expected " << truth.min_eccentricity << " ("
         << truth.vertices.size() << " vertices, " << truth.segments.size() << " segments)";
      return os.str();
    }
  }
  return std::nullopt;
}

double cut_eccentricity(const CactusFPS& fps, std::uint32_t link, bool co_bag_cut) {
  const BlockCutDecomposition& dec = fps.decomposition();
  const VertexId h = dec.hinges[dec.links[link].hinge].vertex;
  std::vector<char> keep = bag_cut_edges(fps, link);
  if (co_bag_cut) {
    for (char& k : keep) k = !k;
  }
  return eccentricity_within(fps.network(), keep, h);
}

std::optional<std::string> audit_arcs(const CactusFPS& fps) {
  const BlockCutDecomposition& dec = fps.decomposition();
  const Network& net = fps.network();
  const auto arcs = fps.arcs();
  for (std::uint32_t h = 0; h < dec.hinges.size(); ++h) {
    std::vector<double> values;
    for (std::uint32_t l : dec.hinges[h].links) values.push_back(arcs[l].into_co_bag_cut);
    std::sort(values.rbegin(), values.rend());
    const HingeRecord& rec = fps.hinge_records()[h];
    const std::uint32_t l1 = fps.link_of(h, rec.first_bag), l2 = fps.link_of(h, rec.second_bag);
    if (rec.first_bag == rec.second_bag || l1 == kInvalidId || l2 == kInvalidId || !close(rec.first, values[0]) ||
        !close(rec.second, values[1]) || !close(arcs[l1].into_co_bag_cut, rec.first) ||
        !close(arcs[l2].into_co_bag_cut, rec.second))
      return "hinge record at " + net.name(dec.hinges[h].vertex);
  }
  for (std::uint32_t l = 0; l < dec.links.size(); ++l) {
    const std::uint32_t h = dec.links[l].hinge;
    const std::string where = "bag " + std::to_string(dec.links[l].bag) + " hinge " + net.name(dec.hinges[h].vertex);
    double sibling = 0.0;
    for (std::uint32_t s : dec.hinges[h].links) {
      if (s != l) sibling = std::max(sibling, arcs[s].into_co_bag_cut);
    }
    if (!close(arcs[l].into_bag_cut, sibling)) return "sibling maximum at " + where;
    if (!close(arcs[l].into_bag_cut, cut_eccentricity(fps, l, false))) return "bag-cut value at " + where;
    if (!close(arcs[l].into_co_bag_cut, cut_eccentricity(fps, l, true))) return "co-bag-cut value at " + where;
    const std::uint32_t target = arcs[l].shortcut;
    if (target == kInvalidId) return "missing shortcut at " + where;
    if (target != l) {
      const std::vector<char> cut = bag_cut_edges(fps, l);
      if (cut[dec.bags[dec.links[target].bag].edges.front()]) return "shortcut leaves the co-bag-cut at " + where;
    }
  }
  return std::nullopt;
}

std::size_t bags_with_points(const CactusFPS& fps, const FarthestSet& set) {
  const std::vector<char> red = red_bags(fps, set);
  return static_cast<std::size_t>(std::count(red.begin(), red.end(), 1));
}

std::optional<std::string> audit_traversal(const CactusFPS& fps, const FarthestSet& truth,
                                           const std::vector<std::uint32_t>& visited) {
  const BlockCutDecomposition& dec = fps.decomposition();
  const std::size_t nb = dec.bags.size();
  const std::vector<char> red = red_bags(fps, truth);
  const std::size_t r = static_cast<std::size_t>(std::count(red.begin(), red.end(), 1));
  if (visited.size() > 2 * r + 1) {
    return std::to_string(visited.size()) + " bags visited for " + std::to_string(r) + " bags with farthest points";
  }
  if (visited.empty()) return std::string("no bag visited");
  // Tree structure rooted at the query bag; red counts per bag and hinge subtree.
  const std::uint32_t start = visited.front();
  std::vector<std::uint32_t> order{start}, up_hinge(nb, kInvalidId);
  std::vector<std::vector<std::uint32_t>> child_hinges(nb);
  std::vector<std::vector<std::uint32_t>> child_bags(dec.hinges.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::uint32_t b = order[i];
    for (std::uint32_t l : dec.bags[b].links) {
      const std::uint32_t h = dec.links[l].hinge;
      if (h == up_hinge[b]) continue;
      child_hinges[b].push_back(h);
      for (std::uint32_t l2 : dec.hinges[h].links) {
        const std::uint32_t c = dec.links[l2].bag;
        if (c == b) continue;
        up_hinge[c] = h;
        child_bags[h].push_back(c);
        order.push_back(c);
      }
    }
  }
  std::vector<char> bag_reach(nb, 0), hinge_reach(dec.hinges.size(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::uint32_t b = *it;
    bag_reach[b] = red[b];
    for (std::uint32_t h : child_hinges[b]) {
      for (std::uint32_t c : child_bags[h]) hinge_reach[h] = hinge_reach[h] || bag_reach[c];
      bag_reach[b] = bag_reach[b] || hinge_reach[h];
    }
  }
  for (std::size_t i = 1; i < visited.size(); ++i) {
    const std::uint32_t b = visited[i];
    if (red[b]) continue;
    std::vector<std::uint32_t> leading;
    for (std::uint32_t h : child_hinges[b]) {
      if (hinge_reach[h]) leading.push_back(h);
    }
    bool split = leading.size() >= 2;
    if (leading.size() == 1) {
      const auto& cs = child_bags[leading[0]];
      split = std::count_if(cs.begin(), cs.end(), [&](std::uint32_t c) { return bag_reach[c] != 0; }) >= 2;
    }
    if (!split) return "bag " + std::to_string(b) + " visited without farthest points or a split";
  }
  return std::nullopt;
}

std::uint64_t instance_seed(std::uint64_t seed, std::size_t index) {
  return seed * 0x9E3779B97F4A7C15ULL + index * 0xBF58476D1CE4E5B9ULL + 1;
}

std::size_t instance_size(const CheckOptions& options, std::size_t index) {
  Rng rng(instance_seed(options.seed, index) ^ 0x5151);
  return rng.uniform_int(options.min_n, std::max(options.min_n, options.max_n));
}

Network instance(const CheckOptions& options, std::size_t index) {
  return generate_network(options.cls, instance_size(options, index), instance_seed(options.seed, index),
                          options.cycle_fraction);
}

CheckReport run_check(const CheckOptions& options) {
  CheckReport report;
  for (std::size_t i = 0; i < options.trials; ++i) {
    const std::uint64_t s = instance_seed(options.seed, i);
    const std::size_t n = instance_size(options, i);
    std::optional<std::string> failure;
    try {
      const FarthestIndex index(instance(options, i), options.cactus);
      const auto probes = probe_points(index.network(), options.interior, s);
      failure = check_instance(index, probes, options.centers);
      if (const CactusFPS* fps = index.cactus(); fps && !failure) {
        failure = audit_arcs(*fps);
        for (std::size_t k = 0; !failure && k < probes.size(); ++k) {
          std::vector<std::uint32_t> visited;
          fps->farthest(probes[k], &visited);
          failure = audit_traversal(*fps, oracle::farthest_points(index.network(), probes[k]), visited);
        }
      }
    } catch (const Error& e) {
      failure = std::string("exception: ") + e.what();
    }
    if (failure) {
      ++report.failed;
      report.failures.push_back({i, s, n, *failure});
    } else {
      ++report.passed;
    }
  }
  return report;
}

}  // namespace netfar::verify
