#include "isogauge/spectral.hpp"

#include <algorithm>
#include <complex>
#include <string>

#include "fft.hpp"

namespace isogauge {
namespace {

using cplx = std::complex<double>;

std::vector<cplx> forward(const PeriodicSamples& f) {
  std::vector<cplx> spec(f.size() / 2 + 1);
  detail::forward_real(f.values(), spec);
  return spec;
}

PeriodicSamples inverse(const std::vector<cplx>& spec, std::size_t n) {
  std::vector<double> v(n);
  detail::inverse_real(spec, v);
  const double scale = 1.0 / static_cast<double>(n);
  for (double& x : v) x *= scale;
  return PeriodicSamples(std::move(v));
}

void require_same_size(const PeriodicSamples& a, const PeriodicSamples& b) {
  if (a.size() != b.size()) {
    throw ValidationError("periodic samples differ in length: " + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()));
  }
}

template <class Op>
PeriodicSamples zip(const PeriodicSamples& a, const PeriodicSamples& b, Op op) {
  require_same_size(a, b);
  std::vector<double> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = op(a[j], b[j]);
  return PeriodicSamples(std::move(v));
}

}  // namespace

PeriodicSamples::PeriodicSamples(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 8 || values_.size() % 2 != 0) {
    throw ValidationError("periodic sample count must be even and >= 8, got " +
                          std::to_string(values_.size()));
  }
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j])) {
      throw ValidationError("non-finite periodic sample at node " + std::to_string(j));
    }
  }
}

double PeriodicSamples::min() const { return *std::min_element(values_.begin(), values_.end()); }
double PeriodicSamples::max() const { return *std::max_element(values_.begin(), values_.end()); }
double PeriodicSamples::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

PeriodicSamples operator+(const PeriodicSamples& a, const PeriodicSamples& b) {
  return zip(a, b, [](double x, double y) { return x + y; });
}
PeriodicSamples operator-(const PeriodicSamples& a, const PeriodicSamples& b) {
  return zip(a, b, [](double x, double y) { return x - y; });
}
PeriodicSamples operator*(const PeriodicSamples& a, const PeriodicSamples& b) {
  return zip(a, b, [](double x, double y) { return x * y; });
}
PeriodicSamples operator/(const PeriodicSamples& a, const PeriodicSamples& b) {
  return zip(a, b, [](double x, double y) { return x / y; });
}
PeriodicSamples operator*(double s, const PeriodicSamples& a) {
  return a.map([s](double x) { return s * x; });
}
PeriodicSamples operator+(double s, const PeriodicSamples& a) {
  return a.map([s](double x) { return s + x; });
}

FourierCoefficients FourierCoefficients::analyze(const PeriodicSamples& f) {
  const std::size_t n = f.size();
  const std::size_t half = n / 2;
  const auto spec = forward(f);
  const double inv_n = 1.0 / static_cast<double>(n);
  FourierCoefficients c;
  c.a0 = spec[0].real() * inv_n;
  c.cos.resize(half);
  c.sin.resize(half);
  for (std::size_t k = 1; k < half; ++k) {
    c.cos[k - 1] = 2.0 * spec[k].real() * inv_n;
    c.sin[k - 1] = -2.0 * spec[k].imag() * inv_n;
  }
  c.cos[half - 1] = spec[half].real() * inv_n;
  c.sin[half - 1] = 0.0;
  return c;
}

PeriodicSamples FourierCoefficients::synthesize(std::size_t n) const {
  if (n < 8 || n % 2 != 0) {
    throw ValidationError("synthesis needs an even node count >= 8");
  }
  if (sin.size() != cos.size()) {
    throw ValidationError("Fourier cosine and sine lists differ in length");
  }
  const std::size_t half = n / 2;
  for (std::size_t k = half; k <= band(); ++k) {
    const bool nyquist = k == half;
    if ((!nyquist && cos[k - 1] != 0.0) || sin[k - 1] != 0.0) {
      throw ValidationError("Fourier band " + std::to_string(band()) +
                            " exceeds n/2 - 1 for n = " + std::to_string(n));
    }
  }
  std::vector<cplx> spec(half + 1, cplx(0.0, 0.0));
  const double dn = static_cast<double>(n);
  spec[0] = dn * a0;
  for (std::size_t k = 1; k < half && k <= band(); ++k) {
    spec[k] = 0.5 * dn * cplx(cos[k - 1], -sin[k - 1]);
  }
  if (band() >= half) spec[half] = dn * cos[half - 1];
  return inverse(spec, n);
}

double FourierCoefficients::evaluate(double theta, int order) const {
  double sum = order == 0 ? a0 : 0.0;
  for (std::size_t k = 1; k <= band(); ++k) {
    const double kk = static_cast<double>(k);
    // d^order/dθ^order of cos and sin advances the phase by order·π/2.
    const double phase = kk * theta + order * std::numbers::pi / 2.0;
    sum += std::pow(kk, order) * (cos[k - 1] * std::cos(phase) + sin[k - 1] * std::sin(phase));
  }
  return sum;
}

double FourierCoefficients::energy_from(std::size_t k_min) const {
  double e = 0.0;
  for (std::size_t k = std::max<std::size_t>(k_min, 1); k <= band(); ++k) {
    e += cos[k - 1] * cos[k - 1] + sin[k - 1] * sin[k - 1];
  }
  return e;
}

PeriodicSamples periodic_derivative(const PeriodicSamples& f, int order) {
  if (order < 1 || order > 3) {
    throw ValidationError("derivative order must be 1, 2 or 3");
  }
  const std::size_t n = f.size();
  const std::size_t half = n / 2;
  auto spec = forward(f);
  for (std::size_t k = 0; k < half; ++k) {
    cplx factor(1.0, 0.0);
    const cplx ik(0.0, static_cast<double>(k));
    for (int o = 0; o < order; ++o) factor *= ik;
    spec[k] *= factor;
  }
  // The Nyquist mode carries no odd derivative on the grid.
  if (order % 2 == 1) {
    spec[half] = 0.0;
  } else {
    spec[half] *= std::pow(-1.0, order / 2) * std::pow(static_cast<double>(half), order);
  }
  return inverse(spec, n);
}

double periodic_integral(const PeriodicSamples& f) {
  // Pairwise summation keeps the rounding at O(log n) ulps.
  auto values = f.values();
  std::vector<double> buf(values.begin(), values.end());
  std::size_t len = buf.size();
  while (len > 1) {
    const std::size_t half = (len + 1) / 2;
    for (std::size_t i = 0; i < len / 2; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (len % 2 == 1) buf[len / 2] = buf[len - 1];
    len = half;
  }
  return 2.0 * std::numbers::pi * buf[0] / static_cast<double>(f.size());
}

PeriodicSamples resample(const PeriodicSamples& f, std::size_t m) {
  const std::size_t n = f.size();
  if (m == n) return f;
  auto c = FourierCoefficients::analyze(f);
  if (m > n) {
    // The Nyquist cosine of the source splits evenly; keep it as a cosine.
    return c.synthesize(m);
  }
  const double scale = std::max(f.max_abs(), 1e-300);
  const std::size_t keep = m / 2 - 1;
  for (std::size_t k = keep + 1; k <= c.band(); ++k) {
    if (std::hypot(c.cos[k - 1], c.sin[k - 1]) > 1e-13 * scale) {
      throw ValidationError("down-sampling to " + std::to_string(m) +
                            " nodes would drop non-zero Fourier modes");
    }
  }
  c.cos.resize(keep);
  c.sin.resize(keep);
  return c.synthesize(m);
}

}  // namespace isogauge
