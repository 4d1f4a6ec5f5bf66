#pragma once

#include <cstddef>
#include <vector>

namespace rmt {

/// Worker count used by the OpenMP kernels. Initialized from RMT_THREADS
/// (0 or unset = OpenMP default).
int worker_count();
void set_worker_cap(int cap);
/// Reads RMT_THREADS and applies it; returns the resulting worker count.
int configure_workers_from_env();

/// Deterministic parallel reduction: [0, n) is cut into fixed blocks
/// independent of the thread count, blocks are summed in parallel and the
/// block partials merged serially in index order. Results are bit-identical
/// for any number of threads.
inline constexpr std::size_t kReductionBlock = 512;

template <class T, class F>
T blocked_sum(std::size_t n, F&& term, T zero = T{}) {
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<T> partial(blocks, zero);
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = lo + kReductionBlock < n ? lo + kReductionBlock : n;
    T acc = zero;
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  T total = zero;
  for (const T& p : partial) total += p;
  return total;
}

}  // namespace rmt
