#pragma once

#include <cstddef>
#include <functional>

namespace hpds {

/// Worker count: HPDS_REDUCE_THREADS when set to a positive integer, otherwise
/// all hardware threads.
[[nodiscard]] std::size_t thread_count();

/// Runs body(i) for i in [0, count). Each index is handled exactly once;
/// callers write results into per-index slots so the outcome does not depend
/// on scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hpds
