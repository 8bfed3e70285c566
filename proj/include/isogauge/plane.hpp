#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <vector>

#include "isogauge/report.hpp"
#include "isogauge/spectral.hpp"

namespace isogauge {

// Planar curves are described by Euclidean support functions p(θ) over the
// outward normal angle θ, so γ(θ) = p u(θ) + p_θ u'(θ) with u = (cos θ, sin θ)
// and the unit tangent is τ(θ) = u'(θ). The norm profile is sampled on the
// same θ grid: h(θ) is the support function of the dual body U* evaluated
// in the tangent direction τ(θ), i.e. h(θ) = 1 / r(θ + π/2) for the
// indicatrix radius r. With n(θ) = -u(θ) the Minkowski normal is
// N = -h_θ τ + h n, and every θ-derivative formula keeps its usual form.

/// Support function of the dual unit ball, sampled against the normal angle.
/// Invariants: h > 0, h(θ + π) = h(θ), h_θθ + h > 0.
class NormProfile {
 public:
  explicit NormProfile(PeriodicSamples h);
  static NormProfile euclidean(std::size_t n) {
    return NormProfile(PeriodicSamples::constant(n, 1.0));
  }

  std::size_t size() const noexcept { return h_.size(); }
  const PeriodicSamples& h() const noexcept { return h_; }
  const PeriodicSamples& h_theta() const noexcept { return h1_; }
  const PeriodicSamples& h_theta_theta() const noexcept { return h2_; }
  /// h_θθ + h, the Euclidean radius of curvature of the isoperimetrix.
  const PeriodicSamples& radius() const noexcept { return radius_; }

 private:
  PeriodicSamples h_, h1_, h2_, radius_;
};

/// Euclidean support function of a strictly convex curve: p_θθ + p > 0.
class SupportProfile {
 public:
  explicit SupportProfile(PeriodicSamples p);

  std::size_t size() const noexcept { return p_.size(); }
  const PeriodicSamples& p() const noexcept { return p_; }
  const PeriodicSamples& p_theta() const noexcept { return p1_; }
  const PeriodicSamples& p_theta_theta() const noexcept { return p2_; }
  /// p_θθ + p = 1/k, the Euclidean radius of curvature.
  const PeriodicSamples& radius() const noexcept { return radius_; }

 private:
  PeriodicSamples p_, p1_, p2_, radius_;
};

/// Closed sampled map into R², possibly not an immersion.
struct PlanarFront {
  std::vector<Eigen::Vector2d> points;
  bool immersed = true;

  std::size_t size() const noexcept { return points.size(); }
  PeriodicSamples x() const;
  PeriodicSamples y() const;
};

PlanarFront curve_from_support(const SupportProfile& p);

/// 𝓛 = ∫ h (p_θθ + p) dθ.
double minkowski_length(const SupportProfile& p, const NormProfile& h);

/// ½ ∫ c ∧ c_u du with spectral c_u.
double signed_area(const PlanarFront& c);

/// κ = (h_θθ + h) / (p_θθ + p).
PeriodicSamples minkowski_curvature(const SupportProfile& p, const NormProfile& h);

/// Minkowski normal N(θ) = -h_θ τ + h n; as a point set it is the isoperimetrix.
PlanarFront isoperimetrix(const NormProfile& h);

/// Support function of the isoperimetrix over the outward normal angle,
/// q(α) = max_θ ⟨ℐ(θ), (cos α, sin α)⟩, by dense sampling of ℐ followed by
/// golden-section refinement.
PeriodicSamples isoperimetrix_support(const NormProfile& h);

/// e = γ + κ^{-1} N.
PlanarFront minkowski_evolute(const SupportProfile& p, const NormProfile& h);

/// γ + φ N.
PlanarFront minkowski_normal_graph(const SupportProfile& p, const NormProfile& h,
                                   const PeriodicSamples& phi);

/// ∫ κ dσ = 2 𝒜(ℐ), the left side by quadrature in θ, the right side from
/// the signed area of the sampled isoperimetrix.
InequalityReport total_curvature_identity(const SupportProfile& p, const NormProfile& h,
                                          double tolerance = 1e-8);

/// Signed area of γ + φN, directly and via
/// 𝒜(γ) + ½∫κ(φ - κ^{-1})² dσ - ½∫κ^{-1} dσ, plus the lower bound
/// 𝒜(γ + φN) >= 𝒜(γ) - ½∫κ^{-1} dσ.
InequalityReport normal_graph_area(const SupportProfile& p, const NormProfile& h,
                                   const PeriodicSamples& phi, double tolerance = 1e-8);

struct PlaneReport : InequalityReport {
  double length = 0.0;        // 𝓛 (Euclidean L for hurwitz_report)
  double area = 0.0;          // 𝒜(γ)
  double iso_area = 0.0;      // 𝒜(ℐ)
  double evolute_area = 0.0;  // 𝒜(e)
  double ratio = 0.0;         // 𝓛² / (4 𝒜(γ) 𝒜(ℐ))
};

/// 0 <= 𝓛² - 4𝒜(γ)𝒜(ℐ) <= 4𝒜(ℐ)|𝒜(e)|, with 𝒜(e) <= 0 asserted.
PlaneReport reverse_iso_report(const SupportProfile& p, const NormProfile& h,
                               double tolerance = 1e-8);

/// Euclidean 0 <= L² - 4πA <= π|A(e)| with A(e) = -½∫p_θθ(p_θθ + p) dθ.
/// Also reports the energy of the support function in Fourier modes >= 3,
/// which vanishes exactly on the equality family.
PlaneReport hurwitz_report(const SupportProfile& p, double tolerance = 1e-8);

}  // namespace isogauge
