#include "netfar/generator.hpp"

#include <algorithm>

namespace netfar {

std::uint64_t Rng::uniform_int(std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo;
  if (span == ~std::uint64_t{0}) return engine_();
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range + 1) % range;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x > limit);
  return lo + x % range;
}

double Rng::uniform_real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

namespace {

class Builder {
 public:
  explicit Builder(std::uint64_t seed) : rng(seed) {}

  VertexId add_vertex() { return count_++; }
  std::size_t vertex_count() const { return count_; }
  void add_edge(VertexId a, VertexId b, double w = 0.0) {
    edges_.push_back({a, b, w > 0.0 ? w : static_cast<double>(rng.uniform_int(1, 10))});
  }
  VertexId random_vertex() { return static_cast<VertexId>(rng.uniform_int(0, count_ - 1)); }

  void add_cycle(VertexId hinge, std::size_t length) {
    VertexId prev = hinge;
    for (std::size_t i = 1; i < length; ++i) {
      VertexId x = add_vertex();
      add_edge(prev, x);
      prev = x;
    }
    add_edge(prev, hinge);
  }

  void add_tree(VertexId hinge, std::size_t edge_count, double weight = 0.0) {
    std::vector<VertexId> local{hinge};
    for (std::size_t i = 0; i < edge_count; ++i) {
      VertexId parent = local[rng.uniform_int(0, local.size() - 1)];
      VertexId x = add_vertex();
      add_edge(parent, x, weight);
      local.push_back(x);
    }
  }

  Network finish() { return Network::from_edges(count_, std::move(edges_)); }

  Rng rng;

 private:
  std::size_t count_ = 0;
  std::vector<Edge> edges_;
};

std::uint64_t derive(std::uint64_t seed, std::uint64_t attempt) {
  return seed ^ (attempt * 0x9E3779B97F4A7C15ULL);
}

}  // namespace

Network generate_random_cactus(std::size_t n, std::uint64_t seed, double cycle_fraction) {
  Builder b(seed);
  b.add_vertex();
  while (b.vertex_count() < std::max<std::size_t>(n, 2)) {
    const VertexId hinge = b.random_vertex();
    if (b.rng.bernoulli(cycle_fraction)) {
      b.add_cycle(hinge, b.rng.uniform_int(3, 8));
    } else {
      b.add_tree(hinge, b.rng.uniform_int(1, 8));
    }
  }
  return b.finish();
}

Network generate_random_tree(std::size_t n, std::uint64_t seed) {
  Builder b(seed);
  b.add_vertex();
  while (b.vertex_count() < std::max<std::size_t>(n, 2)) {
    const VertexId parent = b.random_vertex();
    b.add_edge(parent, b.add_vertex());
  }
  return b.finish();
}

Network generate_random_cycle(std::size_t n, std::uint64_t seed) {
  Builder b(seed);
  const VertexId start = b.add_vertex();
  b.add_cycle(start, std::max<std::size_t>(n, 3));
  return b.finish();
}

Network generate_random_unicyclic(std::size_t n, std::uint64_t seed) {
  n = std::max<std::size_t>(n, 4);
  Builder b(seed);
  const VertexId start = b.add_vertex();
  b.add_cycle(start, b.rng.uniform_int(3, std::max<std::size_t>(3, n / 2)));
  const bool heavy = b.rng.bernoulli(0.25);
  const std::size_t cycle_len = b.vertex_count();
  bool first = true;
  while (b.vertex_count() < n || first) {
    const auto hinge = static_cast<VertexId>(b.rng.uniform_int(0, cycle_len - 1));
    const std::size_t size = b.rng.uniform_int(1, 6);
    b.add_tree(hinge, size, heavy && first ? 10.0 * static_cast<double>(n) : 0.0);
    first = false;
    // Occasionally grow the hung trees instead of adding new ones.
    while (b.vertex_count() < n && b.rng.bernoulli(0.3)) {
      const VertexId at = b.random_vertex();
      if (at >= cycle_len) b.add_edge(at, b.add_vertex());
    }
  }
  return b.finish();
}

Network generate_network(NetworkClass cls, std::size_t n, std::uint64_t seed, double cycle_fraction) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t s = derive(seed, attempt);
    Network net = [&] {
      switch (cls) {
        case NetworkClass::Tree: return generate_random_tree(n, s);
        case NetworkClass::Cycle: return generate_random_cycle(n, s);
        case NetworkClass::UniCyclic: return generate_random_unicyclic(n, s);
        case NetworkClass::Cactus: return generate_random_cactus(n, s, cycle_fraction);
        case NetworkClass::General: break;
      }
      throw ClassError("cannot generate general networks");
    }();
    if (classify(net) == cls) return net;
  }
}

NetworkPoint random_point(const Network& net, Rng& rng) {
  const auto e = static_cast<EdgeId>(rng.uniform_int(0, net.edge_count() - 1));
  return net.point(e, rng.uniform_real());
}

}  // namespace netfar
