#pragma once

#include <cstddef>
#include <functional>

namespace scp {

/// 0 means one job per hardware thread.
std::size_t resolve_jobs(std::size_t requested);

/// Calls body(i) for i in [0, n) on up to `jobs` threads. Work is handed out
/// one index at a time; callers write results into per-index slots so the
/// outcome does not depend on scheduling. The exception from the lowest
/// failing index is rethrown after all workers stop.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& body);

}  // namespace scp
