#include <cmath>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "relevance_reference.hpp"
#include "netfar/generator.hpp"
#include "netfar/instrumentation.hpp"
#include "netfar/oracle.hpp"
#include "netfar/unicyclic_fps.hpp"

using namespace netfar;

namespace {

Network square_with(double w1, double w3) {
  return parse_network("edge v1 v2 1\nedge v2 v3 1\nedge v3 v4 1\nedge v4 v1 1\nedge v1 a " +
                       std::to_string(w1) + "\nedge v3 b " + std::to_string(w3) + "\n");
}

}  // namespace

TEST_CASE("decompose square with pendant") {
  Network net = fixtures::square_pendant();
  auto d = decompose_unicyclic(net);
  CHECK(d.cycle.vertices.size() == 4);
  REQUIRE(d.branches.size() == 1);
  CHECK(net.name(d.branches[0].hinge) == "v1");
  CHECK(d.branches[0].edges.size() == 1);
  CHECK_THROWS_AS(decompose_unicyclic(fixtures::unit_square()), ClassError);
  CHECK_THROWS_AS(UniFPS(fixtures::unit_square()), ClassError);
  CHECK_THROWS_AS(decompose_unicyclic(fixtures::twin_triangles()), ClassError);
}

TEST_CASE("decompose random networks against a cycle finder") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Network net = generate_network(NetworkClass::UniCyclic, 40, seed);
    auto d = decompose_unicyclic(net);
    // Cycle edges are exactly the non-bridges.
    std::set<VertexId> on_cycle(d.cycle.vertices.begin(), d.cycle.vertices.end());
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
      std::vector<char> seen(net.vertex_count(), 0);
      std::vector<VertexId> stack{net.edge(e).u};
      seen[net.edge(e).u] = 1;
      while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        for (const Incidence& in : net.incident(x)) {
          if (in.edge != e && !seen[in.neighbor]) {
            seen[in.neighbor] = 1;
            stack.push_back(in.neighbor);
          }
        }
      }
      const bool bridge = !seen[net.edge(e).v];
      const bool cycle_edge = d.edge_branch[e] == kInvalidId;
      CHECK(bridge != cycle_edge);
    }
    std::size_t hinges = 0;
    for (VertexId v : d.cycle.vertices) hinges += net.degree(v) > 2;
    CHECK(d.branches.size() == hinges);
    for (const auto& br : d.branches) CHECK(on_cycle.count(br.hinge) == 1);
  }
}

TEST_CASE("perspectives of the square with pendant") {
  UniFPS u(fixtures::square_pendant());
  REQUIRE(u.branches().size() == 1);
  const auto& br = u.branches()[0];
  CHECK(br.height == 1.0);
  CHECK(br.exterior == 2.0);
  const Network& t = br.tree.network();
  CHECK(t.vertex_count() == 3);
  CHECK(t.edge_count() == 2);
  CHECK(br.tree.eccentricity(NetworkPoint::at_vertex(br.dummy)) == 3.0);

  auto hits = u.farthest_branches(*u.cycle().position_of(fixtures::vertex(u.network(), "v3")));
  CHECK(hits.distance == 3.0);
  CHECK(hits.branches == std::vector<std::uint32_t>{0});
}

TEST_CASE("square with pendant queries") {
  UniFPS u(fixtures::square_pendant());
  const Network& net = u.network();
  auto t = fixtures::vertex(net, "t");
  CHECK(u.eccentricity(t) == 3.0);
  auto f = u.farthest(t);
  REQUIRE(f.points.size() == 1);
  CHECK(f.points[0] == fixtures::vertex(net, "v3"));

  auto m = fixtures::on(net, "v2", "v3", 0.5);
  CHECK(u.eccentricity(m) == 2.5);
  auto g = u.farthest(m);
  REQUIRE(g.points.size() == 1);
  CHECK(g.points[0] == t);
}

TEST_CASE("relevance on opposite branches") {
  UniFPS both(square_with(1, 3));
  CHECK(both.relevance().relevant.size() == 2);
  UniFPS heavy(square_with(1, 10));
  REQUIRE(heavy.relevance().relevant.size() == 1);
  CHECK(heavy.branches()[heavy.relevance().relevant[0]].height == 10.0);
  CHECK(heavy.bad_case().has_value());

  UniFPS single(fixtures::square_pendant());
  CHECK(single.relevance().relevant.size() == 1);
  CHECK(single.chains().size() == 1);

  UniFPS twin(square_with(1, 1));
  CHECK(twin.chains().size() == 4);
  // Pendants at v1 and v3: v2 and v4 are the equidistant points.
  const Network& net = twin.network();
  for (const char* v : {"v2", "v4"}) {
    CHECK(twin.farthest_branches(*twin.cycle().position_of(fixtures::vertex(net, v))).branches.size() == 2);
  }
  CHECK(twin.farthest_branches(*twin.cycle().position_of(fixtures::on(net, "v1", "v2", 0.5))).branches.size() == 1);
  for (std::size_t k = 1; k < twin.chains().size(); k += 2) {
    const double s = std::fmod(twin.chains()[k].start, twin.cycle().total_weight());
    CHECK(twin.farthest_branches(s).branches.size() == 2);
  }
}

TEST_CASE("elimination matches the quadratic dominance check") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Network net = generate_network(NetworkClass::UniCyclic, 10 + seed % 30, seed);
    UniFPS u(net);
    reference::Perspective p = reference::cycle_perspective(u);
    CHECK(u.relevance().relevant == reference::quadratic_relevant(p));
    std::vector<PendantSite> sites;
    for (const auto& br : u.branches()) sites.push_back({br.position, br.height});
    auto traced = relevant_vertices(u.cycle().total_weight(), sites, true);
    CHECK(traced.invariant_held);
    CHECK(traced.steps <= 3 * sites.size());
    const auto& rel = traced.relevant;
    for (std::size_t k = 0; k < rel.size(); ++k) {
      const auto a = rel[k], b = rel[(k + 1) % rel.size()];
      CHECK(!dominated(u.cycle().total_weight(), sites[a], sites[b]));
      CHECK(!dominated(u.cycle().total_weight(), sites[b], sites[a]));
    }
  }
}

TEST_CASE("pendant weights match the oracle on edge-deleted networks") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Network net = generate_network(NetworkClass::UniCyclic, 8 + seed % 40, seed + 1000);
    UniFPS u(net);
    const auto& dec = u.decomposition();
    for (std::uint32_t b = 0; b < dec.branches.size(); ++b) {
      const std::string hinge = net.name(dec.branches[b].hinge);
      Network inside = fixtures::subnetwork(net, [&](EdgeId e) { return dec.edge_branch[e] == b; });
      Network outside = fixtures::subnetwork(net, [&](EdgeId e) { return dec.edge_branch[e] != b; });
      CHECK(std::abs(u.branches()[b].height - oracle::eccentricity(inside, fixtures::vertex_named(inside, hinge))) <= 1e-9);
      CHECK(std::abs(u.branches()[b].exterior - oracle::eccentricity(outside, fixtures::vertex_named(outside, hinge))) <=
            1e-9);
    }
  }
}

TEST_CASE("farthest branch queries match a linear scan") {
  Rng rng(9);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Network net = generate_network(NetworkClass::UniCyclic, 10 + seed % 40, seed + 77);
    UniFPS u(net);
    reference::Perspective p = reference::cycle_perspective(u);
    const auto& cyc = u.decomposition().cycle;
    Network c = fixtures::subnetwork(net, [&](EdgeId e) { return u.decomposition().edge_branch[e] == kInvalidId; });
    for (int i = 0; i < 50; ++i) {
      const std::size_t slot = rng.uniform_int(0, cyc.edges.size() - 1);
      const NetworkPoint q = net.point(cyc.edges[slot], rng.uniform_real());
      // The same point in the perspective network.
      const Edge& e = net.edge(q.is_vertex() ? cyc.edges[slot] : q.edge);
      const VertexId su = *p.s.find_vertex(net.name(e.u)), sv = *p.s.find_vertex(net.name(e.v));
      const NetworkPoint qs =
          q.is_vertex() ? NetworkPoint::at_vertex(*p.s.find_vertex(net.name(q.vertex))) : canonical_point(p.s, su, sv, q.lambda);
      double best = 0;
      std::vector<double> d(p.pendant.size());
      for (std::size_t j = 0; j < d.size(); ++j) {
        d[j] = oracle::distance(p.s, qs, NetworkPoint::at_vertex(p.pendant[j]));
        best = std::max(best, d[j]);
      }
      std::vector<std::uint32_t> expect;
      for (std::uint32_t j = 0; j < d.size(); ++j) {
        if (d[j] >= best - 1e-9) expect.push_back(j);
      }
      auto hits = u.farthest_branches(*u.cycle().position_of(q));
      std::sort(hits.branches.begin(), hits.branches.end());
      CHECK(std::abs(hits.distance - best) <= 1e-9);
      CHECK(hits.branches == expect);
    }
    (void)c;
  }
}

TEST_CASE("queries match the oracle on random unicyclic networks") {
  Rng rng(21);
  std::size_t bad = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    Network net = generate_network(NetworkClass::UniCyclic, 6 + seed % 50, seed + 5000);
    UniFPS u(net);
    bad += u.bad_case().has_value();
    auto pts = fixtures::probe_points(net, 2);
    for (int i = 0; i < 10; ++i) pts.push_back(random_point(net, rng));
    for (const auto& q : pts) {
      auto o = oracle::farthest_points(net, q);
      CHECK(std::abs(u.eccentricity(q) - o.eccentricity) <= 1e-9);
      auto f = u.farthest(q);
      const bool same = equivalent(net, f, o);
      CHECK(same);
      if (!same) {
        MESSAGE("seed " << seed << " ecc " << f.eccentricity << " vs " << o.eccentricity << " sizes "
                        << f.points.size() << " vs " << o.points.size());
      }
    }
  }
  CHECK(bad > 5);
}

TEST_CASE("perspective preservation") {
  Rng rng(4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Network net = generate_network(NetworkClass::UniCyclic, 30, seed + 300);
    UniFPS u(net);
    for (const auto& br : u.branches()) {
      for (int i = 0; i < 20; ++i) {
        const std::size_t k = rng.uniform_int(0, br.edges.size() - 1);
        const double l = rng.uniform_real();
        const NetworkPoint local = br.tree.network().point(static_cast<EdgeId>(k), l);
        const NetworkPoint global = net.point(br.edges[k], l);
        CHECK(std::abs(br.tree.eccentricity(local) - oracle::eccentricity(net, global)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("query step counts stay near k plus log l") {
  Rng rng(8);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Network net = generate_network(NetworkClass::UniCyclic, 400, seed);
    UniFPS u(net);
    const double logl = std::log2(static_cast<double>(u.branches().size()) + 1);
    for (int i = 0; i < 50; ++i) {
      NetworkPoint q = random_point(net, rng);
      metrics::reset();
      const std::size_t k = u.farthest(q).points.size();
      const auto& c = metrics::counters();
      CHECK(c.query_steps + c.comparisons <= 12 * (k + 1) + 4 * logl + 16);
    }
  }
}
