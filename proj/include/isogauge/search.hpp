#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "isogauge/plane.hpp"
#include "isogauge/spectral.hpp"

namespace isogauge {

enum class Normalization {
  Euclidean,    // (L² - 4πA) / (π|A(e)|), norm fixed to h ≡ 1
  Anisotropic,  // (𝓛² - 4𝒜(γ)𝒜(ℐ)) / (4𝒜(ℐ)|𝒜(e)|)
};

/// Coefficient box searched by `maximize`. A point lists the curve modes
/// (a_k, b_k) for k = 2..curve_degree of p = 1 + Σ(a_k cos kθ + b_k sin kθ),
/// then, unless the norm is fixed, the even norm modes (c_k, d_k) for
/// k = 2, 4, .., norm_degree of h = 1 + Σ(c_k cos kθ + d_k sin kθ).
/// The constant and degree-1 curve modes are frozen (scale and translation).
struct SearchSpace {
  Normalization normalization = Normalization::Anisotropic;
  int curve_degree = 4;
  int norm_degree = 0;
  std::optional<FourierCoefficients> fixed_norm;
  double bound = 0.5;
  std::size_t resolution = 256;
  /// Points whose radius p_θθ + p or h_θθ + h drops below this fraction of
  /// its maximum (checked on a fixed dense grid) are rejected, so validity
  /// does not depend on the quadrature resolution.
  double radius_floor = 1e-2;

  std::size_t curve_dimension() const;
  std::size_t norm_dimension() const;
  std::size_t dimension() const { return curve_dimension() + norm_dimension(); }
};

/// Profiles for a point at n samples; throws ValidationError when invalid.
std::pair<SupportProfile, NormProfile> realize(const SearchSpace& space,
                                               const std::vector<double>& point, std::size_t n);

/// Ratio of the defect to its bound, -inf for invalid or out-of-box points
/// and 0 when |A(e)| < 1e-10 times the curve area.
double sharpness_objective(const SearchSpace& space, const std::vector<double>& point,
                           std::size_t resolution);

struct SearchResult {
  bool feasible = false;
  std::vector<double> point;
  double objective = 0.0;
  std::size_t evaluations = 0;
  std::size_t restarts = 0;
  std::vector<double> trace;  // incumbent after each evaluation
  std::size_t resolution = 0;
  std::size_t recertified_resolution = 0;
  double recertified_objective = 0.0;
  bool recertified = false;  // relative change below 1e-6
};

/// Nelder-Mead with seeded random restarts. Restarts are independent and run
/// on up to `threads` workers; merging is in restart order, so the result
/// depends only on the seed and the budget. Requires budget >= 50.
SearchResult maximize(const SearchSpace& space, std::size_t budget, std::uint64_t seed,
                      unsigned threads = 1);

}  // namespace isogauge
