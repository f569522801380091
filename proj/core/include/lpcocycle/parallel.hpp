#pragma once

#include <cstddef>
#include <functional>

namespace lpcocycle {

/// Worker cap used by every data-parallel scan. 0 means "hardware concurrency".
void set_default_jobs(unsigned jobs) noexcept;
unsigned default_jobs() noexcept;

/// Runs body(i) for i in [0, count). Each index is visited exactly once; callers
/// write results into index-addressed slots so output never depends on scheduling.
/// The first exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned jobs = 0);

}  // namespace lpcocycle
