#include "orthsig/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace orthsig {

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)),
                                                     std::thread::hardware_concurrency()));
  if (workers == 1) {
    fn(0, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    if (begin >= n) break;
    const std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

namespace {

double pairwise_sum_range(const double* p, std::size_t n) {
  if (n <= 8) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += p[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_range(p, half) + pairwise_sum_range(p + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
  return pairwise_sum_range(values.data(), values.size());
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0;
  return pairwise_sum(values) / static_cast<double>(values.size());
}

double variance(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0;
  const double m = mean(values);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = (values[i] - m) * (values[i] - m);
  return pairwise_sum(sq) / static_cast<double>(n - 1);
}

}  // namespace orthsig
