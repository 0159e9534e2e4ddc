#ifndef FEXTREM_THREADING_HPP
#define FEXTREM_THREADING_HPP

#include <cstddef>
#include <functional>

namespace fextrem {

/// Worker count: FEXTREM_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(begin, end) over a contiguous partition of [0, count) across
/// workers. Blocks are assigned by index, so output written to per-index
/// slots is identical for any worker count. Small ranges run inline.
/// The first exception thrown by any block is rethrown after all join.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace fextrem

#endif
