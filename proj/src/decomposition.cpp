#include "netfar/decomposition.hpp"

#include <algorithm>

#include "netfar/instrumentation.hpp"

namespace netfar {

namespace {

// Iterative Tarjan: reports the edge set of every biconnected component.
template <class Fn>
void for_each_biconnected_component(const Network& net, Fn&& on_component) {
  const std::size_t n = net.vertex_count();
  std::vector<std::uint32_t> disc(n, kInvalidId), low(n, 0);
  struct Frame {
    VertexId v;
    EdgeId parent_edge;
    std::size_t next;
  };
  std::vector<Frame> frames;
  std::vector<EdgeId> edge_stack;
  std::vector<EdgeId> component;
  std::uint32_t time = 0;
  disc[0] = low[0] = time++;
  frames.push_back({0, kInvalidId, 0});
  while (!frames.empty()) {
    Frame& f = frames.back();
    auto inc = net.incident(f.v);
    metrics::build_step();
    if (f.next < inc.size()) {
      const Incidence in = inc[f.next++];
      if (in.edge == f.parent_edge) continue;
      if (disc[in.neighbor] == kInvalidId) {
        edge_stack.push_back(in.edge);
        disc[in.neighbor] = low[in.neighbor] = time++;
        frames.push_back({in.neighbor, in.edge, 0});
      } else if (disc[in.neighbor] < disc[f.v]) {
        edge_stack.push_back(in.edge);
        low[f.v] = std::min(low[f.v], disc[in.neighbor]);
      }
      continue;
    }
    const VertexId v = f.v;
    const EdgeId pe = f.parent_edge;
    frames.pop_back();
    if (frames.empty()) break;
    const VertexId u = frames.back().v;
    low[u] = std::min(low[u], low[v]);
    if (low[v] >= disc[u]) {
      component.clear();
      while (true) {
        EdgeId e = edge_stack.back();
        edge_stack.pop_back();
        component.push_back(e);
        if (e == pe) break;
      }
      on_component(std::span<const EdgeId>(component));
    }
  }
}

struct RawBags {
  std::vector<Bag> bags;
  std::vector<std::uint32_t> edge_bag;
};

RawBags collect_bags(const Network& net, bool require_cactus) {
  const std::size_t n = net.vertex_count();
  RawBags out;
  out.edge_bag.assign(net.edge_count(), kInvalidId);
  std::vector<char> is_bridge(net.edge_count(), 0);
  // Scratch: the (up to two) component edges at each vertex of a cycle.
  std::vector<EdgeId> first(n, kInvalidId), second(n, kInvalidId);
  std::vector<VertexId> touched;

  for_each_biconnected_component(net, [&](std::span<const EdgeId> comp) {
    if (comp.size() == 1) {
      is_bridge[comp[0]] = 1;
      return;
    }
    touched.clear();
    bool simple_cycle = true;
    for (EdgeId e : comp) {
      metrics::build_step();
      for (VertexId x : {net.edge(e).u, net.edge(e).v}) {
        if (first[x] == kInvalidId) {
          first[x] = e;
          touched.push_back(x);
        } else if (second[x] == kInvalidId) {
          second[x] = e;
        } else {
          simple_cycle = false;
        }
      }
    }
    simple_cycle = simple_cycle && touched.size() == comp.size();
    Bag bag;
    bag.kind = BagKind::Block;
    if (!simple_cycle) {
      if (require_cactus) {
        for (VertexId x : touched) first[x] = second[x] = kInvalidId;
        throw NotCactusError("edge '" + net.name(net.edge(comp[0]).u) + "'-'" +
                             net.name(net.edge(comp[0]).v) + "' lies on more than one cycle");
      }
      bag.vertices = touched;
      std::sort(bag.vertices.begin(), bag.vertices.end());
      bag.edges.assign(comp.begin(), comp.end());
      std::sort(bag.edges.begin(), bag.edges.end());
    } else {
      VertexId start = *std::min_element(touched.begin(), touched.end());
      EdgeId e0 = first[start], e1 = second[start];
      EdgeId step = net.other_endpoint(e0, start) < net.other_endpoint(e1, start) ? e0 : e1;
      VertexId at = start;
      for (std::size_t i = 0; i < comp.size(); ++i) {
        metrics::build_step();
        bag.vertices.push_back(at);
        bag.edges.push_back(step);
        VertexId next = net.other_endpoint(step, at);
        step = first[next] == step ? second[next] : first[next];
        at = next;
      }
    }
    for (VertexId x : touched) first[x] = second[x] = kInvalidId;
    const auto id = static_cast<std::uint32_t>(out.bags.size());
    for (EdgeId e : bag.edges) out.edge_bag[e] = id;
    out.bags.push_back(std::move(bag));
  });

  // Branches: connected components of the bridge edges.
  std::vector<VertexId> stack;
  for (EdgeId seed = 0; seed < net.edge_count(); ++seed) {
    if (!is_bridge[seed] || out.edge_bag[seed] != kInvalidId) continue;
    const auto id = static_cast<std::uint32_t>(out.bags.size());
    Bag bag;
    bag.kind = BagKind::Branch;
    out.edge_bag[seed] = id;
    bag.edges.push_back(seed);
    stack.assign({net.edge(seed).u, net.edge(seed).v});
    bag.vertices = stack;
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (const Incidence& in : net.incident(x)) {
        metrics::build_step();
        if (!is_bridge[in.edge] || out.edge_bag[in.edge] != kInvalidId) continue;
        out.edge_bag[in.edge] = id;
        bag.edges.push_back(in.edge);
        bag.vertices.push_back(in.neighbor);
        stack.push_back(in.neighbor);
      }
    }
    std::sort(bag.vertices.begin(), bag.vertices.end());
    std::sort(bag.edges.begin(), bag.edges.end());
    out.bags.push_back(std::move(bag));
  }
  return out;
}

}  // namespace

BlockCutDecomposition decompose(const Network& net) {
  RawBags raw = collect_bags(net, true);
  BlockCutDecomposition d;
  d.bags = std::move(raw.bags);
  d.edge_bag = std::move(raw.edge_bag);
  const std::size_t n = net.vertex_count();
  std::vector<std::uint32_t> bag_count(n, 0), last_bag(n, kInvalidId);
  for (std::uint32_t b = 0; b < d.bags.size(); ++b) {
    for (VertexId x : d.bags[b].vertices) {
      metrics::build_step();
      if (last_bag[x] != b) {
        last_bag[x] = b;
        ++bag_count[x];
      }
    }
  }
  d.hinge_of_vertex.assign(n, kInvalidId);
  for (VertexId x = 0; x < n; ++x) {
    if (bag_count[x] > 1) {
      d.hinge_of_vertex[x] = static_cast<std::uint32_t>(d.hinges.size());
      d.hinges.push_back(Hinge{x, {}});
    }
  }
  for (std::uint32_t b = 0; b < d.bags.size(); ++b) {
    for (VertexId x : d.bags[b].vertices) {
      metrics::build_step();
      const std::uint32_t h = d.hinge_of_vertex[x];
      if (h == kInvalidId) continue;
      const auto link = static_cast<std::uint32_t>(d.links.size());
      d.links.push_back({b, h});
      d.bags[b].links.push_back(link);
      d.hinges[h].links.push_back(link);
    }
  }
  return d;
}

bool is_cactus(const Network& net) {
  try {
    collect_bags(net, true);
    return true;
  } catch (const NotCactusError&) {
    return false;
  }
}

BagCounts count_bags(const Network& net) {
  RawBags raw = collect_bags(net, false);
  std::vector<std::uint32_t> bag_count(net.vertex_count(), 0), last_bag(net.vertex_count(), kInvalidId);
  for (std::uint32_t b = 0; b < raw.bags.size(); ++b) {
    for (VertexId x : raw.bags[b].vertices) {
      if (last_bag[x] != b) {
        last_bag[x] = b;
        ++bag_count[x];
      }
    }
  }
  BagCounts c;
  c.bags = raw.bags.size();
  c.hinges = static_cast<std::size_t>(
      std::count_if(bag_count.begin(), bag_count.end(), [](std::uint32_t k) { return k > 1; }));
  return c;
}

}  // namespace netfar
