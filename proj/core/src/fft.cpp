#include "furthlab/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace furthlab::fft {

namespace {
std::mutex plan_mutex;  // FFTW planning is not thread-safe

void transform(std::vector<std::complex<double>>& data, int sign) {
  if (data.empty()) return;
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), ptr, ptr, sign, FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("fftw_plan_dft_1d failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_destroy_plan(plan);
  }
}
}  // namespace

void forward(std::vector<std::complex<double>>& data) { transform(data, FFTW_FORWARD); }

void inverse(std::vector<std::complex<double>>& data) {
  transform(data, FFTW_BACKWARD);
  const double inv = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= inv;
}

std::vector<double> angular_frequencies(std::size_t n, double dx) {
  std::vector<double> k(n);
  const double dk = 2.0 * 3.14159265358979323846 / (static_cast<double>(n) * dx);
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = static_cast<std::ptrdiff_t>(i);
    k[i] = dk * static_cast<double>(s < static_cast<std::ptrdiff_t>((n + 1) / 2)
                                        ? s
                                        : s - static_cast<std::ptrdiff_t>(n));
  }
  return k;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace furthlab::fft
