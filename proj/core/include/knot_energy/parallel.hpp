#pragma once

#include <cstddef>
#include <functional>

namespace knot_energy {

/// Worker count from KNOT_ENERGY_THREADS; unset or 0 means hardware concurrency.
std::size_t thread_count();

/// Runs body(i) for i in [0, count) on up to thread_count() threads. Work is
/// handed out one index at a time. If any call throws, the exception from the
/// smallest failing index is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace knot_energy
