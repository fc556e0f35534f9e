#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ntorus {

// Upper bound on worker threads used by grid and sample loops. Results
// never depend on this value.
void set_worker_threads(int threads);
int worker_threads();

// Calls body(i) for i in [0, count). Each index is visited exactly once;
// body must only write to storage owned by index i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// Fixed-order pairwise summation.
double pairwise_sum(std::span<const double> values);

// Sums `width` accumulators over [0, count) in fixed-size blocks. Blocks are
// reduced pairwise in index order, so the result is independent of threads.
std::vector<double> block_reduce(std::size_t count, std::size_t width,
                                 const std::function<void(std::size_t, std::span<double>)>& term);

}  // namespace ntorus
