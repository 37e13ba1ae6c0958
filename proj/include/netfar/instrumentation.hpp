#pragma once

#include <cstdint>

namespace netfar::metrics {

// Per-thread operation counters. Builders and queries bump these so tests
// and the bench command can inspect asymptotic behaviour without timing.
struct Counters {
  std::uint64_t build_steps = 0;
  std::uint64_t query_steps = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t bag_visits = 0;
};

Counters& counters() noexcept;
void reset() noexcept;

inline void build_step(std::uint64_t n = 1) noexcept { counters().build_steps += n; }
inline void query_step(std::uint64_t n = 1) noexcept { counters().query_steps += n; }
inline void comparison(std::uint64_t n = 1) noexcept { counters().comparisons += n; }
inline void bag_visit() noexcept { ++counters().bag_visits; }

}  // namespace netfar::metrics
