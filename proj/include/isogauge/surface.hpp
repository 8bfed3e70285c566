#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <utility>
#include <vector>

#include "isogauge/report.hpp"
#include "isogauge/sphere.hpp"

namespace isogauge {

// A strictly convex surface is carried by its support function h on the
// Gauss sphere; the surface point with outer normal z is f = h z + ∇̄h, the
// radius tensor is r = ∇̄²h + h σ, and its eigenvalues are the principal
// radii. Integrals over the surface are pulled back with dσ = 𝒦 dμ.

/// Rejection raised when the radius tensor is not positive definite.
class ConvexityError : public ValidationError {
 public:
  ConvexityError(const std::string& what, std::vector<std::size_t> nodes)
      : ValidationError(what), nodes_(std::move(nodes)) {}
  const std::vector<std::size_t>& nodes() const noexcept { return nodes_; }

 private:
  std::vector<std::size_t> nodes_;
};

/// Support function whose radius tensor has minimum eigenvalue at least
/// 1e-6·mean(h) at every node.
class SupportField {
 public:
  explicit SupportField(SphereScalarField h);

  const SphereScalarField& h() const noexcept { return h_; }
  const GridPtr& grid() const noexcept { return h_.grid(); }
  const SphereDerivatives& derivatives() const noexcept { return d_; }
  /// Ordered principal radii ρ₁ >= ρ₂ > 0.
  const SphereScalarField& rho1() const noexcept { return rho1_; }
  const SphereScalarField& rho2() const noexcept { return rho2_; }

 private:
  SphereScalarField h_;
  SphereDerivatives d_;
  SphereScalarField rho1_, rho2_;
};

/// R³-valued samples indexed by the nodes of a SphereGrid.
struct SphereMap {
  GridPtr grid;
  std::vector<Eigen::Vector3d> points;

  SphereScalarField component(int axis) const;
  static SphereMap from_components(const SphereScalarField& x, const SphereScalarField& y,
                                   const SphereScalarField& z);
};

struct SurfaceGeometry {
  SphereMap position;       // f = h z + ∇̄h
  SphereScalarField rho1;   // ρ₁ >= ρ₂
  SphereScalarField rho2;
  double total_mean_curvature = 0.0;  // ∫H dμ = 2∫h dσ
  double area = 0.0;                  // |M| = ∫h² dσ - ½∫|∇̄h|² dσ
  double area_from_radii = 0.0;       // ∫ρ₁ρ₂ dσ
  double mean_curvature_from_radii = 0.0;  // ∫(ρ₁ + ρ₂) dσ
  double tracefree = 0.0;             // ∫|A°|²/𝒦 dμ = ½∫(ρ₁ - ρ₂)² dσ
  double gauss = 0.0;                 // ∫𝒦 dμ with dμ from |f_θ × f_φ|
  double mean_support = 0.0;          // h̄
};

SurfaceGeometry surface_from_support(const SupportField& h);

std::pair<SphereScalarField, SphereScalarField> principal_radii(const SupportField& h);

/// Gauss–Bonnet ∫𝒦 dμ = 4π with the area element taken from the sampled
/// position map, and Minkowski's inequality ∫H dμ >= sqrt(16π|M|).
InequalityReport gauss_bonnet_check(const SupportField& h, double tolerance = 1e-8);

/// (1/16π)(∫H dμ)² - |M| = ½∫|∇̄h|² dσ - ∫(h - h̄)² dσ. The left side is built
/// from the radius tensor (second derivatives), the right side from h and
/// its gradient.
InequalityReport deficit_identity_check(const SupportField& h, double tolerance = 1e-8);

/// Oriented volume (1/3)∫ det[ψ, ψ_θ, ψ_φ] dθ dφ of a closed map.
double oriented_volume(const SphereMap& map);

/// V[f + u z] = V[f] + ∫(u + ½Hu² + ⅓𝒦u³) dμ, evaluated in the Gauss chart.
double normal_graph_volume(const SupportField& h, const SphereScalarField& u);

/// Series value against the oriented volume of the sampled map f + u z.
InequalityReport normal_graph_volume_check(const SupportField& h, const SphereScalarField& u,
                                           double tolerance = 1e-8);

struct FocalData {
  SphereMap b1;  // f - ρ₁ z
  SphereMap b2;  // f - ρ₂ z
  double volume1 = 0.0;
  double volume2 = 0.0;
};

FocalData focal_maps(const SupportField& h);

/// V[b₁] - V[b₂] = (1/6)∫(ρ₁ - ρ₂)³ dσ. Also records how close the field
/// comes to an umbilic (min of ρ₁ - ρ₂ relative to its max).
InequalityReport focal_volume_identity(const SupportField& h, double tolerance = 1e-7);

struct SurfaceReport : InequalityReport {
  double deficit = 0.0;  // (∫H dμ)² - 16π|M|
  double bound1 = 0.0;   // (8π/3)∫|A°|²/𝒦 dμ
  double bound2 = 0.0;   // (8π/3)(4π)^{1/3}((3/√2)(V[b₁] - V[b₂]))^{2/3}
  double holder = 0.0;   // (4π)^{1/3}(∫|A°|³/𝒦² dμ)^{2/3}
};

/// 0 <= deficit <= bound1 <= bound2.
SurfaceReport reverse_minkowski_report(const SupportField& h, double tolerance = 1e-8);

}  // namespace isogauge
