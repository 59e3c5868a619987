#pragma once

#include <cstddef>
#include <functional>

namespace domcone {

/// Worker count: DOMCONE_THREADS if set (>= 1), else hardware concurrency,
/// never more than the hardware reports.
std::size_t worker_count();

/// Runs body(i) for i in [0, count). Callers write results into slot i and
/// reduce afterwards, so output is independent of scheduling. If any call
/// throws, the exception from the lowest index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace domcone
