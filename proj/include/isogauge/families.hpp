#pragma once

#include <cstddef>

#include "isogauge/plane.hpp"
#include "isogauge/random.hpp"
#include "isogauge/sphere.hpp"

namespace isogauge {

// Random and closed-form input families shared by sweeps, the CLI and tests.
// Random perturbations are halved until the profile invariants hold.

/// p = 1 + Σ_{k=2..max_degree} (a_k cos kθ + b_k sin kθ), |a_k|, |b_k| <= amplitude / k.
SupportProfile random_support(Rng& rng, std::size_t n, int max_degree = 6,
                              double amplitude = 0.15);

/// Hurwitz equality family a0 + a1 cos θ + b1 sin θ + a2 cos 2θ + b2 sin 2θ.
SupportProfile random_quadratic_support(Rng& rng, std::size_t n);

/// h = 1 + Σ over even k <= max_degree, |c_k| <= amplitude / k.
NormProfile random_norm(Rng& rng, std::size_t n, int max_degree = 4, double amplitude = 0.3);

/// φ = Σ_{k<=max_degree} random modes of size <= amplitude.
PeriodicSamples random_offset(Rng& rng, std::size_t n, int max_degree = 5,
                              double amplitude = 0.1);

/// h = 1 + Σ ε_lm Y_lm over degrees 1..max_degree with Σ|ε| <= total; the
/// radius tensor is checked positive definite with margin 1e-6·mean(h).
SphereScalarField random_support_field(Rng& rng, const GridPtr& grid, int max_degree = 4,
                                       double total = 0.05);

/// Smooth field Σ c_lm Y_lm over degrees 0..max_degree with |c| <= amplitude.
SphereScalarField random_smooth_field(Rng& rng, const GridPtr& grid, int max_degree = 4,
                                      double amplitude = 0.05);

/// Support function of the spheroid with semi-axes (a, a, c):
/// h(z) = sqrt(a²(z1² + z2²) + c² z3²).
SphereScalarField spheroid_support(const GridPtr& grid, double equatorial, double polar);

/// h = Σ c_l P_l(cos θ) (Legendre series in the colatitude).
SphereScalarField zonal_support(const GridPtr& grid, const std::vector<double>& legendre);

}  // namespace isogauge
