#pragma once

#include <cstddef>
#include <vector>

namespace areaflow {

/// Sets the number of worker threads used by data-parallel sweeps.
/// Results never depend on this value: reductions run over fixed-size
/// blocks whose partial sums are combined in index order.
void set_worker_count(int workers);
int worker_count();

namespace detail {

inline constexpr std::size_t kReductionBlock = 512;
inline constexpr std::size_t kParallelThreshold = 4096;

/// Applies f(i) for i in [0, n). f must write only to index-disjoint outputs.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    f(static_cast<std::size_t>(i));
  }
#else
  for (std::size_t i = 0; i < n; ++i) f(i);
#endif
}

/// Sum of term(i) over [0, n) with a summation order fixed by n alone.
template <typename F>
double ordered_sum(std::size_t n, F&& term) {
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  if (blocks <= 1) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += term(i);
    return acc;
  }
  std::vector<double> partial(blocks, 0.0);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t lo = b * kReductionBlock;
    const std::size_t hi = lo + kReductionBlock < n ? lo + kReductionBlock : n;
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[b] = acc;
  });
  double acc = 0.0;
  for (double v : partial) acc += v;
  return acc;
}

/// Maximum of term(i) over [0, n); returns `init` for n == 0.
template <typename F>
double ordered_max(std::size_t n, F&& term, double init = 0.0) {
  double m = init;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = term(i);
    if (v > m) m = v;
  }
  return m;
}

}  // namespace detail
}  // namespace areaflow
