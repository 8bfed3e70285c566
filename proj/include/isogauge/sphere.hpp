#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "isogauge/report.hpp"
#include "isogauge/spectral.hpp"

namespace isogauge {

/// Gauss–Legendre (in cos θ) × uniform-longitude tensor grid on S².
///
/// Row i sits at colatitude θ_i with x_i = cos θ_i descending from the north
/// pole; column j at longitude φ_j = 2πj / n_phi. No node lies on a pole.
/// Quadrature weights are solid-angle weights, so Σ w = 4π.
class SphereGrid {
 public:
  SphereGrid(std::size_t n_theta, std::size_t n_phi);

  static std::shared_ptr<const SphereGrid> make(std::size_t n_theta, std::size_t n_phi) {
    return std::make_shared<const SphereGrid>(n_theta, n_phi);
  }

  std::size_t n_theta() const noexcept { return x_.size(); }
  std::size_t n_phi() const noexcept { return n_phi_; }
  std::size_t size() const noexcept { return n_theta() * n_phi_; }
  std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * n_phi_ + j; }

  double cos_colatitude(std::size_t i) const { return x_[i]; }
  double sin_colatitude(std::size_t i) const { return s_[i]; }
  double colatitude(std::size_t i) const;
  double longitude(std::size_t j) const;
  /// Solid-angle weight of every node in row i.
  double weight(std::size_t i) const { return w_[i]; }
  /// Gauss–Legendre weight in x of row i (sums to 2).
  double legendre_weight(std::size_t i) const { return gl_w_[i]; }

  Eigen::Vector3d point(std::size_t i, std::size_t j) const;
  Eigen::Vector3d e_theta(std::size_t i, std::size_t j) const;
  Eigen::Vector3d e_phi(std::size_t j) const;

  /// d/dx on polynomials through the Gauss–Legendre nodes, row-major.
  const std::vector<double>& diff_matrix() const noexcept { return diff_; }

 private:
  std::size_t n_phi_;
  std::vector<double> x_, s_, gl_w_, w_, diff_;
};

using GridPtr = std::shared_ptr<const SphereGrid>;

/// Scalar samples on a SphereGrid, row-major (colatitude, longitude).
class SphereScalarField {
 public:
  SphereScalarField() = default;
  SphereScalarField(GridPtr grid, std::vector<double> values);

  static SphereScalarField sample(GridPtr grid,
                                  const std::function<double(const Eigen::Vector3d&)>& f);
  static SphereScalarField constant(GridPtr grid, double c);

  const GridPtr& grid() const noexcept { return grid_; }
  const SphereGrid& g() const { return *grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  double at(std::size_t i, std::size_t j) const { return values_[grid_->index(i, j)]; }

  double min() const;
  double max() const;
  double max_abs() const;

  template <class F>
  SphereScalarField map(F&& f) const {
    std::vector<double> v(values_.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(values_[k]);
    return SphereScalarField(grid_, std::move(v));
  }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

SphereScalarField operator+(const SphereScalarField& a, const SphereScalarField& b);
SphereScalarField operator-(const SphereScalarField& a, const SphereScalarField& b);
SphereScalarField operator*(const SphereScalarField& a, const SphereScalarField& b);
SphereScalarField operator*(double s, const SphereScalarField& a);
SphereScalarField operator+(double s, const SphereScalarField& a);

/// Covariant derivatives in the orthonormal frame (e_θ, e_φ) with
/// e_φ = (sin θ)^{-1} ∂_φ. The Laplacian is computed as the divergence of
/// the gradient, independently of the Hessian, so their trace agreement is
/// a genuine check.
struct SphereDerivatives {
  SphereScalarField grad_theta;
  SphereScalarField grad_phi;
  SphereScalarField hess_tt;
  SphereScalarField hess_tp;
  SphereScalarField hess_pp;
  SphereScalarField laplacian;
};

SphereDerivatives sphere_operators(const SphereScalarField& h);

/// Coordinate derivatives ∂_θ f and ∂_φ f (not frame-normalised).
struct CoordinateDerivatives {
  SphereScalarField d_theta;
  SphereScalarField d_phi;
};

CoordinateDerivatives coordinate_derivatives(const SphereScalarField& f);

/// Σ_nodes w f.
double sphere_integral(const SphereScalarField& f);

/// Real spherical harmonic of degree l and order m (cos for m > 0, sin for
/// m < 0), orthonormal in L²(S², σ).
double real_spherical_harmonic(int l, int m, double cos_theta, double phi);
double real_spherical_harmonic(int l, int m, const Eigen::Vector3d& z);

SphereScalarField harmonic_field(const GridPtr& grid, int l, int m);

/// ∫ f Y_lm dσ by grid quadrature.
double harmonic_coefficient(const SphereScalarField& f, int l, int m);

/// Spectral Poincaré sandwich 0 <= middle <= upper on S² (mean removed).
InequalityReport poincare_gap_check(const SphereScalarField& f, double tolerance = 1e-8);

/// The same sandwich on S¹.
InequalityReport poincare_gap_check(const PeriodicSamples& f, double tolerance = 1e-8);

}  // namespace isogauge
