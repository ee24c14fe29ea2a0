#ifndef NLWT_PARALLEL_HPP
#define NLWT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace nlwt {

/// Runs fn(i) for i in [begin, end) on up to `workers` threads. Each index
/// must be independent of the others; under that contract the result is
/// identical for any worker count. workers <= 1 runs inline.
void parallel_for(std::size_t begin, std::size_t end, int workers,
                  const std::function<void(std::size_t)>& fn);

} // namespace nlwt

#endif
