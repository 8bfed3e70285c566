#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "isogauge/error.hpp"

namespace isogauge {

/// A 2π-periodic scalar held as uniform samples at θ_j = 2πj/n.
///
/// The sample count is even and at least 8; every value is finite. The
/// trigonometric interpolant of the samples is the function the spectral
/// operators act on.
class PeriodicSamples {
 public:
  PeriodicSamples() = default;
  explicit PeriodicSamples(std::vector<double> values);

  template <class F>
  static PeriodicSamples sample(std::size_t n, F&& f) {
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = f(node(j, n));
    return PeriodicSamples(std::move(v));
  }

  static PeriodicSamples constant(std::size_t n, double c) {
    return PeriodicSamples(std::vector<double>(n, c));
  }

  static double node(std::size_t j, std::size_t n) {
    return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
  }

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }
  double node(std::size_t j) const { return node(j, size()); }

  double min() const;
  double max() const;
  double max_abs() const;

  template <class F>
  PeriodicSamples map(F&& f) const {
    std::vector<double> v(values_.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(values_[j]);
    return PeriodicSamples(std::move(v));
  }

 private:
  std::vector<double> values_;
};

PeriodicSamples operator+(const PeriodicSamples& a, const PeriodicSamples& b);
PeriodicSamples operator-(const PeriodicSamples& a, const PeriodicSamples& b);
PeriodicSamples operator*(const PeriodicSamples& a, const PeriodicSamples& b);
PeriodicSamples operator/(const PeriodicSamples& a, const PeriodicSamples& b);
PeriodicSamples operator*(double s, const PeriodicSamples& a);
PeriodicSamples operator+(double s, const PeriodicSamples& a);

/// Real Fourier series a0 + Σ_{k=1..K} (a_k cos kθ + b_k sin kθ).
struct FourierCoefficients {
  double a0 = 0.0;
  std::vector<double> cos;  // a_1 .. a_K
  std::vector<double> sin;  // b_1 .. b_K, same length as cos

  std::size_t band() const noexcept { return cos.size(); }

  /// Coefficients of the trigonometric interpolant. The result carries the
  /// full band n/2, the Nyquist term appearing as a cosine only.
  static FourierCoefficients analyze(const PeriodicSamples& f);

  /// Samples at n nodes. Modes at or above n/2 must vanish, except a cosine
  /// Nyquist term, so that synthesis never aliases.
  PeriodicSamples synthesize(std::size_t n) const;

  /// Value of the order-th derivative of the series at an arbitrary angle.
  double evaluate(double theta, int order = 0) const;

  /// Σ_{k >= k_min} (a_k² + b_k²).
  double energy_from(std::size_t k_min) const;
};

/// Spectral derivative of the trigonometric interpolant, order 1..3.
PeriodicSamples periodic_derivative(const PeriodicSamples& f, int order);

/// Trapezoid rule (2π/n) Σ f_j.
double periodic_integral(const PeriodicSamples& f);

/// Resamples the trigonometric interpolant onto m nodes. Down-sampling is
/// only allowed when the dropped modes are zero to 1e-13 relative.
PeriodicSamples resample(const PeriodicSamples& f, std::size_t m);

}  // namespace isogauge
