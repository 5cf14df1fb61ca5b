#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace furthlab {

/// Pairwise (cascade) summation: result is independent of chunking used by
/// callers and accurate to O(log n) ulps. All ensemble reductions go through
/// this so reports are reproducible bit-for-bit.
double pairwise_sum(std::span<const double> values);

struct MeanStderr {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  std::size_t n = 0;
};

/// Sample mean and its standard error (ddof = 1).
MeanStderr mean_and_stderr(std::span<const double> samples);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y = a + b x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Runs fn(i) for i in [0, n) on up to max_threads threads. Work is split in
/// contiguous blocks; fn must only write to slots it owns. Thread count comes
/// from FURTHLAB_THREADS (capped by hardware) when max_threads == 0.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  std::size_t max_threads = 0);

/// Effective thread cap: FURTHLAB_THREADS env var, else hardware concurrency.
std::size_t thread_cap();

}  // namespace furthlab
