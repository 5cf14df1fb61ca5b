#include "furthlab/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace furthlab {

namespace {
double pairwise_block(const double* v, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_block(v, half) + pairwise_block(v + half, n - half);
}
}  // namespace

double pairwise_sum(std::span<const double> values) {
  return pairwise_block(values.data(), values.size());
}

MeanStderr mean_and_stderr(std::span<const double> samples) {
  MeanStderr out;
  out.n = samples.size();
  if (out.n == 0) return out;
  out.mean = pairwise_sum(samples) / static_cast<double>(out.n);
  if (out.n < 2) return out;
  std::vector<double> sq(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double d = samples[i] - out.mean;
    sq[i] = d * d;
  }
  const double var = pairwise_sum(sq) / static_cast<double>(out.n - 1);
  out.stderr_of_mean = std::sqrt(var / static_cast<double>(out.n));
  return out;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("linear_fit: need matching arrays of size >= 2");
  const double n = static_cast<double>(x.size());
  const double mx = pairwise_sum(x) / n;
  const double my = pairwise_sum(y) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

std::size_t thread_cap() {
  std::size_t hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("FURTHLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && static_cast<std::size_t>(v) < hw) return static_cast<std::size_t>(v);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  std::size_t max_threads) {
  std::size_t threads = max_threads == 0 ? thread_cap() : max_threads;
  if (threads > n) threads = n == 0 ? 1 : n;
  if (threads <= 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t block = (n + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t lo = t * block;
    const std::size_t hi = std::min(n, lo + block);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace furthlab
