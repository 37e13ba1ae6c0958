#include <algorithm>
#include <cmath>
#include <queue>

#include "doctest.h"
#include "fixtures.hpp"
#include "netfar/generator.hpp"
#include "netfar/oracle.hpp"

using namespace netfar;

namespace {

// Every edge of weight w cut into w * steps_per_unit equal segments.
struct Discretized {
  struct Node {
    EdgeId edge;
    double lambda;
  };
  std::vector<Node> nodes;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;
  std::vector<std::size_t> vertex_node;
  std::vector<std::vector<std::size_t>> edge_nodes;  // includes both endpoints
};

Discretized discretize(const Network& net, int steps_per_unit) {
  Discretized d;
  d.vertex_node.resize(net.vertex_count());
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    d.vertex_node[v] = d.nodes.size();
    d.nodes.push_back({kInvalidId, 0.0});
  }
  d.edge_nodes.resize(net.edge_count());
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge(e);
    const int k = static_cast<int>(std::lround(ed.weight * steps_per_unit));
    auto& list = d.edge_nodes[e];
    list.push_back(d.vertex_node[ed.u]);
    for (int j = 1; j < k; ++j) {
      list.push_back(d.nodes.size());
      d.nodes.push_back({e, static_cast<double>(j) / k});
    }
    list.push_back(d.vertex_node[ed.v]);
  }
  d.adj.resize(d.nodes.size());
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const auto& list = d.edge_nodes[e];
    const double step = net.edge(e).weight / static_cast<double>(list.size() - 1);
    for (std::size_t j = 0; j + 1 < list.size(); ++j) {
      d.adj[list[j]].push_back({list[j + 1], step});
      d.adj[list[j + 1]].push_back({list[j], step});
    }
  }
  return d;
}

std::vector<double> grid_dijkstra(const Discretized& d, std::size_t src) {
  std::vector<double> dist(d.nodes.size(), 1e300);
  using E = std::pair<double, std::size_t>;
  std::priority_queue<E, std::vector<E>, std::greater<>> q;
  dist[src] = 0;
  q.push({0, src});
  while (!q.empty()) {
    auto [dx, x] = q.top();
    q.pop();
    if (dx > dist[x]) continue;
    for (auto [y, w] : d.adj[x]) {
      if (dx + w < dist[y]) {
        dist[y] = dx + w;
        q.push({dist[y], y});
      }
    }
  }
  return dist;
}

NetworkPoint node_point(const Network& net, const Discretized& d, std::size_t i) {
  if (d.nodes[i].edge == kInvalidId) {
    auto it = std::find(d.vertex_node.begin(), d.vertex_node.end(), i);
    return NetworkPoint::at_vertex(static_cast<VertexId>(it - d.vertex_node.begin()));
  }
  return net.point(d.nodes[i].edge, d.nodes[i].lambda);
}

}  // namespace

TEST_CASE("distance examples") {
  Network tri = fixtures::unit_triangle();
  CHECK(oracle::distance(tri, fixtures::vertex(tri, "v1"), fixtures::on(tri, "v2", "v3", 0.5)) ==
        doctest::Approx(1.5));
  Network sq = fixtures::square_pendant();
  for (const NetworkPoint& p : fixtures::probe_points(sq)) CHECK(oracle::distance(sq, p, p) == 0.0);
  // Same edge, both interior.
  CHECK(oracle::distance(sq, fixtures::on(sq, "v1", "v2", 0.2), fixtures::on(sq, "v1", "v2", 0.7)) ==
        doctest::Approx(0.5));
}

TEST_CASE("eccentricity and farthest examples") {
  Network tri = fixtures::unit_triangle();
  auto fs = oracle::farthest_points(tri, fixtures::vertex(tri, "v1"));
  CHECK(fs.eccentricity == doctest::Approx(1.5));
  REQUIRE(fs.points.size() == 1);
  CHECK(same_position(tri, fs.points[0], fixtures::on(tri, "v2", "v3", 0.5)));

  Network ab = fixtures::path_ab2();
  CHECK(oracle::eccentricity(ab, fixtures::vertex(ab, "a")) == 2.0);

  Network star = fixtures::unit_star();
  auto sf = oracle::farthest_points(star, fixtures::vertex(star, "l1"));
  CHECK(sf.eccentricity == 2.0);
  REQUIRE(sf.points.size() == 2);
  CHECK(sf.points[0] == fixtures::vertex(star, "l2"));
  CHECK(sf.points[1] == fixtures::vertex(star, "l3"));

  Network tw = fixtures::twin_triangles();
  auto tf = oracle::farthest_points(tw, fixtures::vertex(tw, "h"));
  CHECK(tf.eccentricity == doctest::Approx(1.5));
  REQUIRE(tf.points.size() == 2);
  CHECK(same_position(tw, tf.points[0], fixtures::on(tw, "a1", "a2", 0.5)));
  CHECK(same_position(tw, tf.points[1], fixtures::on(tw, "b1", "b2", 0.5)));
}

TEST_CASE("extended shortest path trees") {
  Network tri = fixtures::unit_triangle();
  auto spt = oracle::extended_spt(tri, fixtures::vertex(tri, "v1"));
  CHECK(spt.leaves.size() == 2);
  for (auto leaf : spt.leaves) {
    CHECK(spt.nodes[leaf].distance == doctest::Approx(1.5));
    CHECK(spt.nodes[leaf].offset == doctest::Approx(0.5));
  }
  CHECK(spt.edges.size() == 4);

  Network star = fixtures::unit_star();
  auto st = oracle::extended_spt(star, fixtures::vertex(star, "l1"));
  CHECK(st.nodes.size() == 4);
  CHECK(st.edges.size() == 3);
  CHECK(st.leaves.size() == 2);

  Rng rng(7);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Network net = generate_random_cactus(40, seed, 0.6);
    for (int i = 0; i < 10; ++i) {
      NetworkPoint s = random_point(net, rng);
      auto t = oracle::extended_spt(net, s);
      CHECK(std::abs(t.max_leaf_distance() - oracle::eccentricity(net, s)) <= 1e-9);
      double total = 0;
      for (const auto& e : t.edges) total += e.length;
      double weight = 0;
      for (const Edge& e : net.edges()) weight += e.weight;
      CHECK(total == doctest::Approx(weight));
    }
  }
}

TEST_CASE("oracle properties on random networks") {
  Rng rng(11);
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Network net = generate_random_cactus(30, seed, 0.5);
    for (int i = 0; i < 10; ++i) {
      NetworkPoint p = random_point(net, rng), q = random_point(net, rng), r = random_point(net, rng);
      const double pq = oracle::distance(net, p, q);
      CHECK(std::abs(pq - oracle::distance(net, q, p)) <= 1e-9);
      CHECK(oracle::distance(net, p, r) <= pq + oracle::distance(net, q, r) + 1e-9);
      auto fs = oracle::farthest_points(net, p);
      CHECK(std::abs(fs.eccentricity - oracle::eccentricity(net, p)) <= 1e-12);
      CHECK(!fs.points.empty());
      CHECK(fs.points.size() <= net.edge_count());
      for (const auto& x : fs.points) CHECK(std::abs(oracle::distance(net, p, x) - fs.eccentricity) <= 1e-9);
    }
  }
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Network cyc = generate_network(NetworkClass::Cycle, 20, seed);
    double w = 0;
    for (const Edge& e : cyc.edges()) w += e.weight;
    for (int i = 0; i < 20; ++i) CHECK(std::abs(oracle::eccentricity(cyc, random_point(cyc, rng)) - w / 2) <= 1e-9);
    Network tree = generate_network(NetworkClass::Tree, 40, seed);
    for (int i = 0; i < 20; ++i) {
      for (const auto& x : oracle::farthest_points(tree, random_point(tree, rng)).points) {
        CHECK(x.is_vertex());
        CHECK(tree.degree(x.vertex) == 1);
      }
    }
  }
}

TEST_CASE("distance and eccentricity match a dense discretization") {
  Rng rng(5);
  Network net = generate_random_cactus(20, 99, 0.5);
  Discretized d = discretize(net, 40);
  for (int i = 0; i < 10; ++i) {
    const std::size_t a = rng.uniform_int(0, d.nodes.size() - 1), b = rng.uniform_int(0, d.nodes.size() - 1);
    auto dist = grid_dijkstra(d, a);
    CHECK(std::abs(oracle::distance(net, node_point(net, d, a), node_point(net, d, b)) - dist[b]) <= 1e-6);
  }
  Network big = generate_random_cactus(50, 98, 0.5);
  Discretized g = discretize(big, 40);
  for (int i = 0; i < 20; ++i) {
    // Sources on a grid twice as coarse keep every maximum on a grid node.
    std::size_t a;
    do {
      a = rng.uniform_int(0, g.nodes.size() - 1);
    } while (g.nodes[a].edge != kInvalidId &&
             std::lround(g.nodes[a].lambda * big.edge(g.nodes[a].edge).weight * 40) % 2 != 0);
    auto dist = grid_dijkstra(g, a);
    CHECK(std::abs(oracle::eccentricity(big, node_point(big, g, a)) - *std::max_element(dist.begin(), dist.end())) <=
          1e-6);
  }
}

TEST_CASE("center set examples") {
  Network ab = fixtures::path_ab2();
  auto c = oracle::center_set(ab);
  CHECK(c.min_eccentricity == doctest::Approx(1.0));
  CHECK(c.vertices.empty());
  REQUIRE(c.segments.size() == 1);
  CHECK(c.segments[0].lambda0 == doctest::Approx(0.5));
  CHECK(c.segments[0].lambda1 == doctest::Approx(0.5));

  Network tri = fixtures::unit_triangle();
  auto t = oracle::center_set(tri);
  CHECK(t.min_eccentricity == doctest::Approx(1.5));
  CHECK(t.vertices.empty());
  REQUIRE(t.segments.size() == 3);
  for (const auto& s : t.segments) {
    CHECK(s.lambda0 == 0.0);
    CHECK(s.lambda1 == 1.0);
  }

  Network star = fixtures::unit_star();
  auto s = oracle::center_set(star);
  CHECK(s.min_eccentricity == doctest::Approx(1.0));
  CHECK(s.segments.empty());
  REQUIRE(s.vertices.size() == 1);
  CHECK(star.name(s.vertices[0]) == "h");
}

TEST_CASE("center set matches a dense discretization on unicyclic networks") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Network net = generate_network(NetworkClass::UniCyclic, 30, seed);
    auto c = oracle::center_set(net);
    Discretized d = discretize(net, 40);
    std::vector<double> ecc(d.nodes.size());
    for (std::size_t i = 0; i < d.nodes.size(); ++i) ecc[i] = oracle::eccentricity(net, node_point(net, d, i));
    const double best = *std::min_element(ecc.begin(), ecc.end());
    CHECK(std::abs(best - c.min_eccentricity) <= 1e-9);
    auto in_center = [&](const NetworkPoint& p) {
      for (VertexId v : c.vertices) {
        if (same_position(net, p, NetworkPoint::at_vertex(v), 1e-5)) return true;
      }
      for (const auto& s : c.segments) {
        const Edge& e = net.edge(s.edge);
        if (p.is_vertex()) {
          if ((p.vertex == e.u && s.lambda0 * e.weight <= 1e-5) ||
              (p.vertex == e.v && (1 - s.lambda1) * e.weight <= 1e-5))
            return true;
        } else if (p.edge == s.edge && p.lambda >= s.lambda0 - 1e-5 / e.weight &&
                   p.lambda <= s.lambda1 + 1e-5 / e.weight) {
          return true;
        }
      }
      return false;
    };
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
      CHECK((ecc[i] <= best + 1e-9) == in_center(node_point(net, d, i)));
    }
  }
}
