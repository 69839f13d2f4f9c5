#ifndef ORTHSIG_PARALLEL_HPP
#define ORTHSIG_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <span>

namespace orthsig {

// Runs fn(begin, end) over a partition of [0, n) on up to `threads` workers.
// Work is split by fixed-size chunks so results never depend on the worker
// count; callers write to disjoint slots.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t, std::size_t)>& fn);

// Deterministic pairwise summation (fixed binary tree, independent of any
// partitioning used to produce the values).
double pairwise_sum(std::span<const double> values);

double mean(std::span<const double> values);
double variance(std::span<const double> values);  // unbiased

}  // namespace orthsig

#endif
