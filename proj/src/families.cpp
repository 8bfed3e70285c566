#include "isogauge/families.hpp"

#include <cmath>

#include "isogauge/error.hpp"
#include "isogauge/surface.hpp"

namespace isogauge {
namespace {

// Positive floor for p'' + p and h'' + h in generated profiles, so that random
// inputs stay well resolved.
constexpr double kRadiusFloor = 0.1;
constexpr int kMaxShrink = 60;

PeriodicSamples trig_series(std::size_t n, double a0, const std::vector<double>& a,
                            const std::vector<double>& b) {
  return PeriodicSamples::sample(n, [&](double t) {
    double v = a0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      v += a[k] * std::cos(static_cast<double>(k) * t) + b[k] * std::sin(static_cast<double>(k) * t);
    }
    return v;
  });
}

double min_radius(const std::vector<double>& a, const std::vector<double>& b, double a0,
                  std::size_t n) {
  double lo = 1e300;
  for (std::size_t j = 0; j < 4 * n; ++j) {
    const double t = PeriodicSamples::node(j, 4 * n);
    double v = a0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double kk = static_cast<double>(k);
      v += (1.0 - kk * kk) * (a[k] * std::cos(kk * t) + b[k] * std::sin(kk * t));
    }
    lo = std::min(lo, v);
  }
  return lo;
}

// Halve the perturbation until the radius of curvature clears the floor.
void shrink_to_convex(std::vector<double>& a, std::vector<double>& b, double a0, std::size_t n) {
  for (int i = 0; i < kMaxShrink && min_radius(a, b, a0, n) < kRadiusFloor * a0; ++i) {
    for (auto& c : a) c *= 0.5;
    for (auto& c : b) c *= 0.5;
  }
}

void check_degree(std::size_t n, int max_degree) {
  if (max_degree < 0 || 2 * static_cast<std::size_t>(max_degree) >= n) {
    throw ValidationError("degree " + std::to_string(max_degree) + " not resolved by " +
                          std::to_string(n) + " samples");
  }
}

}  // namespace

SupportProfile random_support(Rng& rng, std::size_t n, int max_degree, double amplitude) {
  check_degree(n, max_degree);
  std::vector<double> a(max_degree + 1, 0.0), b(max_degree + 1, 0.0);
  for (int k = 2; k <= max_degree; ++k) {
    a[k] = rng.uniform(-amplitude, amplitude) / k;
    b[k] = rng.uniform(-amplitude, amplitude) / k;
  }
  shrink_to_convex(a, b, 1.0, n);
  return SupportProfile(trig_series(n, 1.0, a, b));
}

SupportProfile random_quadratic_support(Rng& rng, std::size_t n) {
  check_degree(n, 2);
  std::vector<double> a(3, 0.0), b(3, 0.0);
  const double a0 = rng.uniform(0.5, 2.0);
  a[1] = rng.uniform(-1.0, 1.0);
  b[1] = rng.uniform(-1.0, 1.0);
  a[2] = rng.uniform(-0.2, 0.2) * a0;
  b[2] = rng.uniform(-0.2, 0.2) * a0;
  shrink_to_convex(a, b, a0, n);
  return SupportProfile(trig_series(n, a0, a, b));
}

NormProfile random_norm(Rng& rng, std::size_t n, int max_degree, double amplitude) {
  check_degree(n, max_degree);
  std::vector<double> a(max_degree + 1, 0.0), b(max_degree + 1, 0.0);
  for (int k = 2; k <= max_degree; k += 2) {
    a[k] = rng.uniform(-amplitude, amplitude) / k;
    b[k] = rng.uniform(-amplitude, amplitude) / k;
  }
  shrink_to_convex(a, b, 1.0, n);
  return NormProfile(trig_series(n, 1.0, a, b));
}

PeriodicSamples random_offset(Rng& rng, std::size_t n, int max_degree, double amplitude) {
  check_degree(n, max_degree);
  std::vector<double> a(max_degree + 1, 0.0), b(max_degree + 1, 0.0);
  const double a0 = rng.uniform(-amplitude, amplitude);
  for (int k = 1; k <= max_degree; ++k) {
    a[k] = rng.uniform(-amplitude, amplitude);
    b[k] = rng.uniform(-amplitude, amplitude);
  }
  return trig_series(n, a0, a, b);
}

SphereScalarField random_support_field(Rng& rng, const GridPtr& grid, int max_degree,
                                       double total) {
  if (max_degree < 1 || static_cast<std::size_t>(max_degree) >= grid->n_theta()) {
    throw ValidationError("support degree " + std::to_string(max_degree) +
                          " not resolved by the grid");
  }
  std::vector<double> eps;
  double sum = 0.0;
  for (int l = 1; l <= max_degree; ++l) {
    for (int m = -l; m <= l; ++m) {
      eps.push_back(rng.uniform(-1.0, 1.0));
      sum += std::abs(eps.back());
    }
  }
  double scale = total * rng.uniform(0.5, 1.0) / sum;
  for (int attempt = 0; attempt < kMaxShrink; ++attempt, scale *= 0.5) {
    auto h = SphereScalarField::constant(grid, 1.0);
    std::size_t idx = 0;
    for (int l = 1; l <= max_degree; ++l) {
      for (int m = -l; m <= l; ++m) h = h + (eps[idx++] * scale) * harmonic_field(grid, l, m);
    }
    try {
      SupportField probe(h);
      return h;
    } catch (const ConvexityError&) {
    }
  }
  throw ValidationError("could not generate a convex support field");
}

SphereScalarField random_smooth_field(Rng& rng, const GridPtr& grid, int max_degree,
                                      double amplitude) {
  auto f = SphereScalarField::constant(grid, 0.0);
  for (int l = 0; l <= max_degree; ++l) {
    for (int m = -l; m <= l; ++m) {
      f = f + rng.uniform(-amplitude, amplitude) * harmonic_field(grid, l, m);
    }
  }
  return f;
}

SphereScalarField spheroid_support(const GridPtr& grid, double equatorial, double polar) {
  if (!(equatorial > 0.0) || !(polar > 0.0)) {
    throw ValidationError("spheroid semi-axes must be positive");
  }
  return SphereScalarField::sample(grid, [&](const Eigen::Vector3d& z) {
    return std::sqrt(equatorial * equatorial * (z[0] * z[0] + z[1] * z[1]) +
                     polar * polar * z[2] * z[2]);
  });
}

SphereScalarField zonal_support(const GridPtr& grid, const std::vector<double>& legendre) {
  return SphereScalarField::sample(grid, [&](const Eigen::Vector3d& z) {
    const double x = z[2];
    double p_prev = 1.0, p = x, v = 0.0;
    for (std::size_t l = 0; l < legendre.size(); ++l) {
      if (l == 0) {
        v += legendre[0];
        continue;
      }
      if (l > 1) {
        const double ll = static_cast<double>(l);
        const double next = ((2.0 * ll - 1.0) * x * p - (ll - 1.0) * p_prev) / ll;
        p_prev = p;
        p = next;
      }
      v += legendre[l] * p;
    }
    return v;
  });
}

}  // namespace isogauge
