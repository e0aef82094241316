#pragma once

#include <cstddef>
#include <functional>

namespace phasekit {

// Worker cap used by every parallel kernel. Defaults to the machine
// parallelism; 0 restores the default.
void set_thread_count(unsigned n) noexcept;
unsigned thread_count() noexcept;

// Runs body(i) for i in [0, n) over a static contiguous partition. Each index
// is visited exactly once, so results are independent of the worker count as
// long as body(i) only writes to slot i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace phasekit
