#include "netfar/instrumentation.hpp"

namespace netfar::metrics {

Counters& counters() noexcept {
  thread_local Counters c;
  return c;
}

void reset() noexcept { counters() = Counters{}; }

}  // namespace netfar::metrics
