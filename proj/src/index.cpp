#include "netfar/index.hpp"

#include <algorithm>
#include <variant>

#include "netfar/cycle_fps.hpp"
#include "netfar/tree_fps.hpp"
#include "netfar/unicyclic_fps.hpp"

namespace netfar {

namespace {

struct CycleIndex {
  explicit CycleIndex(Network n) : net(std::move(n)), fps(net, cycle_layout(net)) {}
  Network net;
  CycleFPS fps;
};

}  // namespace

struct FarthestIndex::Impl {
  std::variant<TreeFPS, CycleIndex, UniFPS, CactusFPS> fps;
};

FarthestIndex::FarthestIndex(Network net, CactusOptions options) : cls_(classify(net)) {
  switch (cls_) {
    case NetworkClass::Tree:
      impl_.reset(new Impl{TreeFPS(std::move(net))});
      break;
    case NetworkClass::Cycle:
      impl_.reset(new Impl{CycleIndex(std::move(net))});
      break;
    case NetworkClass::UniCyclic:
      impl_.reset(new Impl{UniFPS(std::move(net))});
      break;
    case NetworkClass::Cactus:
      impl_.reset(new Impl{CactusFPS(std::move(net), options)});
      break;
    case NetworkClass::General:
      throw ClassError("general networks are only supported by the oracle");
  }
}

FarthestIndex::FarthestIndex(FarthestIndex&&) noexcept = default;
FarthestIndex& FarthestIndex::operator=(FarthestIndex&&) noexcept = default;
FarthestIndex::~FarthestIndex() = default;

const Network& FarthestIndex::network() const noexcept {
  return std::visit(
      [](const auto& s) -> const Network& {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, CycleIndex>) {
          return s.net;
        } else {
          return s.network();
        }
      },
      impl_->fps);
}

const CactusFPS* FarthestIndex::cactus() const noexcept { return std::get_if<CactusFPS>(&impl_->fps); }

double FarthestIndex::eccentricity(const NetworkPoint& q) const {
  return std::visit(
      [&](const auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, CycleIndex>) {
          return s.fps.eccentricity();
        } else {
          return s.eccentricity(q);
        }
      },
      impl_->fps);
}

FarthestSet FarthestIndex::farthest(const NetworkPoint& q) const {
  return std::visit(
      [&](const auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, CycleIndex>) {
          return s.fps.farthest(s.net, q);
        } else {
          return s.farthest(q);
        }
      },
      impl_->fps);
}

std::size_t FarthestIndex::count_farthest(const NetworkPoint& q) const {
  if (const auto* t = std::get_if<TreeFPS>(&impl_->fps)) return t->count_farthest(q);
  return farthest(q).points.size();
}

std::vector<std::vector<double>> FarthestIndex::profile_breakpoints() const {
  const Network& net = network();
  if (const auto* t = std::get_if<TreeFPS>(&impl_->fps)) {
    std::vector<std::vector<double>> out(net.edge_count());
    if (!t->center().is_vertex()) out[t->center().edge].push_back(t->center().lambda);
    return out;
  }
  if (const auto* u = std::get_if<UniFPS>(&impl_->fps)) return u->profile_breakpoints();
  if (const auto* c = std::get_if<CactusFPS>(&impl_->fps)) return c->profile_breakpoints();
  return std::vector<std::vector<double>>(net.edge_count());
}

std::vector<std::vector<ProfileSample>> FarthestIndex::profiles(std::size_t uniform) const {
  const Network& net = network();
  auto breaks = profile_breakpoints();
  std::vector<std::vector<ProfileSample>> out(net.edge_count());
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    std::vector<double>& lambdas = breaks[e];
    std::erase_if(lambdas, [](double x) { return x <= kSnapTolerance || x >= 1.0 - kSnapTolerance; });
    for (std::size_t k = 1; k <= uniform; ++k) lambdas.push_back(static_cast<double>(k) / (uniform + 1));
    lambdas.push_back(0.0);
    lambdas.push_back(1.0);
    std::sort(lambdas.begin(), lambdas.end());
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
    for (double lambda : lambdas) out[e].push_back({lambda, eccentricity(net.point(e, lambda))});
  }
  return out;
}

CenterSet FarthestIndex::centers() const {
  if (const auto* c = std::get_if<CactusFPS>(&impl_->fps)) return c->continuous_centers();
  return center_set_from_profiles(network(), profiles());
}

}  // namespace netfar
