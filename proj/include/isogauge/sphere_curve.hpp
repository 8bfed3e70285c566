#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <vector>

#include "isogauge/plane.hpp"
#include "isogauge/report.hpp"
#include "isogauge/spectral.hpp"

namespace isogauge {

// Closed curves on the unit sphere sampled at uniform parameter nodes
// u_j = 2πj/n. Parameter derivatives are spectral, so any smooth
// parametrisation works; arclength enters only through ds = |γ_u| du.

/// Unit-vector samples of a closed, approximately simple curve.
class SphericalCurve {
 public:
  explicit SphericalCurve(std::vector<Eigen::Vector3d> points);

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<Eigen::Vector3d>& points() const noexcept { return points_; }
  PeriodicSamples component(int axis) const;

 private:
  std::vector<Eigen::Vector3d> points_;
};

/// Darboux frame (γ, t, η = γ × t) with t_s = -γ + k_g η, η_s = -k_g t.
struct CurveFrame {
  std::vector<Eigen::Vector3d> gamma, t, eta;
  PeriodicSamples speed;  // |γ_u|
  PeriodicSamples kg;     // geodesic curvature
  PeriodicSamples kg_s;   // d k_g / ds
  std::vector<double> ds;  // arclength quadrature weights |γ_u| 2π/n

  std::size_t size() const noexcept { return gamma.size(); }
};

/// Rejects curves with k_g <= 1e-8·2π/L at any node.
CurveFrame frame_and_curvature(const SphericalCurve& curve);

struct CurveMeasures {
  double length = 0.0;          // L
  double area = 0.0;            // A = 2π - K
  double total_curvature = 0.0; // K = ∫k_g ds
  double elastic = 0.0;         // J = ∫sqrt(1 + k_g²) ds
};

/// Throws ValidationError unless 0 < A < 2π.
CurveMeasures length_area(const CurveFrame& frame);

/// 𝓡 = ∬ (k(s) - k(σ))² / (sqrt((1 + k(s)²)(1 + k(σ)²)) + 1 + k(s)k(σ)) ds dσ
/// by the tensor trapezoid rule.
double remainder_functional(const CurveFrame& frame);

struct SphereCurveReport : InequalityReport {
  double length = 0.0;
  double area = 0.0;
  double total_curvature = 0.0;
  double elastic = 0.0;
  double remainder = 0.0;
  double oscillation_bound = 0.0;  // L/(1 + max k_g²) ∫(k_g - k̄)² ds
};

/// lhs = L² - A(4π - A), rhs = J² - 4π². Asserts lhs = rhs - 𝓡, 𝓡 >= 0,
/// lhs >= 0 and rhs - lhs >= the oscillation bound, all against
/// tolerance·max(L², 4π²). The equality flag is the geodesic-circle
/// classifier var(k_g)/mean(1 + k_g²) < 1e-10.
SphereCurveReport reverse_iso_identity_report(const SphericalCurve& curve,
                                              double tolerance = 1e-8);

struct SphericalEvolute {
  std::vector<Eigen::Vector3d> points;  // (k_g γ + η)/sqrt(1 + k_g²)
  PeriodicSamples speed;                // |k_g'|/(1 + k_g²)
  std::vector<double> cusps;            // parameters u where k_g' = 0
};

SphericalEvolute spherical_evolute(const CurveFrame& frame);

/// Central projection of (x, y, height) onto the sphere. The planar curve must
/// stay within radius height·tan(0.45π) of the origin.
SphericalCurve gnomonic_lift(const PlanarFront& planar, double height);

}  // namespace isogauge
