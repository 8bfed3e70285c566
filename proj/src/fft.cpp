#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace isogauge::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

// FFTW's planner is not reentrant; execution with the new-array interface is.
const PlanPair& plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> real(n);
  std::vector<std::complex<double>> spec(n / 2 + 1);
  auto* c = reinterpret_cast<fftw_complex*>(spec.data());
  const int size = static_cast<int>(n);
  PlanPair p;
  p.forward = fftw_plan_dft_r2c_1d(size, real.data(), c, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.inverse = fftw_plan_dft_c2r_1d(size, c, real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  return cache.emplace(n, p).first->second;
}

}  // namespace

void forward_real(std::span<const double> x, std::span<std::complex<double>> out) {
  const auto& p = plans_for(x.size());
  // r2c leaves its input untouched.
  fftw_execute_dft_r2c(p.forward, const_cast<double*>(x.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void inverse_real(std::span<const std::complex<double>> in, std::span<double> x) {
  const auto& p = plans_for(x.size());
  // c2r overwrites its input.
  std::vector<std::complex<double>> scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(p.inverse, reinterpret_cast<fftw_complex*>(scratch.data()), x.data());
}

}  // namespace isogauge::detail
