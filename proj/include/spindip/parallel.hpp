#pragma once

#include <cstddef>
#include <functional>

namespace spindip {

/// Name of the environment variable that caps worker threads.
inline constexpr const char* kMaxWorkersEnv = "SPINDIP_MAX_WORKERS";

/// Threads to use for `items` independent tasks: hardware concurrency, capped by
/// SPINDIP_MAX_WORKERS when set to a positive integer, never more than items.
std::size_t worker_count(std::size_t items);

/// Runs body(i) for i in [0, n), split into contiguous blocks across workers.
/// The first exception thrown by any worker is rethrown after all join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace spindip
