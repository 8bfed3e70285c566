#include "isogauge/surface.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace isogauge {
namespace {

constexpr double pi = std::numbers::pi;

struct Radii {
  SphereScalarField rho1, rho2;
};

Radii eigen_radii(const SphereScalarField& h, const SphereDerivatives& d) {
  const std::size_t n = h.size();
  std::vector<double> r1(n), r2(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = d.hess_tt[k] + h[k];
    const double c = d.hess_pp[k] + h[k];
    const double b = d.hess_tp[k];
    const double mean = 0.5 * (a + c);
    const double rad = std::hypot(0.5 * (a - c), b);
    r1[k] = mean + rad;
    // Product form avoids cancellation when ρ₂ << ρ₁.
    r2[k] = mean - rad > 0.5 * mean ? mean - rad : (a * c - b * b) / (mean + rad);
  }
  return {SphereScalarField(h.grid(), std::move(r1)), SphereScalarField(h.grid(), std::move(r2))};
}

struct MapDerivatives {
  std::vector<Eigen::Vector3d> d_theta, d_phi;
};

MapDerivatives map_derivatives(const SphereMap& m) {
  MapDerivatives out;
  out.d_theta.resize(m.points.size());
  out.d_phi.resize(m.points.size());
  for (int axis = 0; axis < 3; ++axis) {
    const auto d = coordinate_derivatives(m.component(axis));
    for (std::size_t k = 0; k < m.points.size(); ++k) {
      out.d_theta[k][axis] = d.d_theta[k];
      out.d_phi[k][axis] = d.d_phi[k];
    }
  }
  return out;
}

SphereMap offset_map(const SphereMap& base, const SphereScalarField& u, double sign) {
  SphereMap m{base.grid, base.points};
  const auto& g = *base.grid;
  for (std::size_t i = 0; i < g.n_theta(); ++i) {
    for (std::size_t j = 0; j < g.n_phi(); ++j) {
      const std::size_t k = g.index(i, j);
      m.points[k] += sign * u[k] * g.point(i, j);
    }
  }
  return m;
}

SphereMap position_map(const SupportField& h) {
  const auto& g = *h.grid();
  const auto& d = h.derivatives();
  SphereMap m{h.grid(), std::vector<Eigen::Vector3d>(g.size())};
  for (std::size_t i = 0; i < g.n_theta(); ++i) {
    for (std::size_t j = 0; j < g.n_phi(); ++j) {
      const std::size_t k = g.index(i, j);
      m.points[k] = h.h()[k] * g.point(i, j) + d.grad_theta[k] * g.e_theta(i, j) +
                    d.grad_phi[k] * g.e_phi(j);
    }
  }
  return m;
}

}  // namespace

SupportField::SupportField(SphereScalarField h) : h_(std::move(h)), d_(sphere_operators(h_)) {
  auto radii = eigen_radii(h_, d_);
  rho1_ = std::move(radii.rho1);
  rho2_ = std::move(radii.rho2);
  const double mean = sphere_integral(h_) / (4.0 * pi);
  const double floor = 1e-6 * std::abs(mean);
  std::vector<std::size_t> bad;
  for (std::size_t k = 0; k < rho2_.size(); ++k) {
    if (!(rho2_[k] >= floor) || mean <= 0.0) bad.push_back(k);
  }
  if (!bad.empty()) {
    std::string list;
    for (std::size_t i = 0; i < std::min<std::size_t>(bad.size(), 8); ++i) {
      list += (i ? ", " : "") + std::to_string(bad[i]);
    }
    if (bad.size() > 8) list += ", ...";
    throw ConvexityError("radius tensor not positive definite at " + std::to_string(bad.size()) +
                             " node(s): " + list,
                         std::move(bad));
  }
}

SphereScalarField SphereMap::component(int axis) const {
  std::vector<double> v(points.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = points[k][axis];
  return SphereScalarField(grid, std::move(v));
}

SphereMap SphereMap::from_components(const SphereScalarField& x, const SphereScalarField& y,
                                     const SphereScalarField& z) {
  SphereMap m{x.grid(), std::vector<Eigen::Vector3d>(x.size())};
  for (std::size_t k = 0; k < x.size(); ++k) m.points[k] = {x[k], y[k], z[k]};
  return m;
}

std::pair<SphereScalarField, SphereScalarField> principal_radii(const SupportField& h) {
  return {h.rho1(), h.rho2()};
}

SurfaceGeometry surface_from_support(const SupportField& h) {
  const auto& g = *h.grid();
  const auto& d = h.derivatives();
  SurfaceGeometry s;
  s.position = position_map(h);
  s.rho1 = h.rho1();
  s.rho2 = h.rho2();

  const auto grad2 = d.grad_theta * d.grad_theta + d.grad_phi * d.grad_phi;
  s.total_mean_curvature = 2.0 * sphere_integral(h.h());
  s.area = sphere_integral(h.h() * h.h()) - 0.5 * sphere_integral(grad2);
  s.area_from_radii = sphere_integral(s.rho1 * s.rho2);
  s.mean_curvature_from_radii = sphere_integral(s.rho1 + s.rho2);
  const auto gap = s.rho1 - s.rho2;
  s.tracefree = 0.5 * sphere_integral(gap * gap);
  s.mean_support = sphere_integral(h.h()) / (4.0 * pi);

  // dμ = |f_θ × f_φ| dθ dφ = (|f_θ × f_φ| / sin θ) dσ, and 𝒦 = 1/(ρ₁ρ₂).
  const auto md = map_derivatives(s.position);
  std::vector<double> density(g.size());
  for (std::size_t i = 0; i < g.n_theta(); ++i) {
    for (std::size_t j = 0; j < g.n_phi(); ++j) {
      const std::size_t k = g.index(i, j);
      const double jac = md.d_theta[k].cross(md.d_phi[k]).norm() / g.sin_colatitude(i);
      density[k] = jac / (s.rho1[k] * s.rho2[k]);
    }
  }
  s.gauss = sphere_integral(SphereScalarField(h.grid(), std::move(density)));
  return s;
}

InequalityReport gauss_bonnet_check(const SupportField& h, double tolerance) {
  const auto s = surface_from_support(h);
  InequalityReport r;
  r.check = "gauss_bonnet";
  r.relation = Relation::Identity;
  r.resolution = h.grid()->n_theta();
  r.tolerance = tolerance;
  r.add("IH", s.total_mean_curvature);
  r.add("area", s.area);
  r.add("area_from_radii", s.area_from_radii);
  r.add("tracefree", s.tracefree);
  r.add("gauss", s.gauss);
  r.add("mean_support", s.mean_support);
  const double minkowski_gap = s.total_mean_curvature - std::sqrt(16.0 * pi * s.area);
  r.add("minkowski_gap", minkowski_gap);
  r.require(minkowski_gap >= -tolerance * s.total_mean_curvature,
            "Minkowski inequality violated");
  r.settle(s.gauss, 4.0 * pi, 4.0 * pi);
  return r;
}

InequalityReport deficit_identity_check(const SupportField& h, double tolerance) {
  const auto& d = h.derivatives();
  const double ih = sphere_integral(h.rho1() + h.rho2());
  const double area = sphere_integral(h.rho1() * h.rho2());
  const double left = ih * ih / (16.0 * pi) - area;

  const double mean = sphere_integral(h.h()) / (4.0 * pi);
  const auto dev = h.h().map([mean](double v) { return v - mean; });
  const double grad2 = sphere_integral(d.grad_theta * d.grad_theta + d.grad_phi * d.grad_phi);
  const double right = 0.5 * grad2 - sphere_integral(dev * dev);

  InequalityReport r;
  r.check = "deficit_identity";
  r.relation = Relation::Identity;
  r.resolution = h.grid()->n_theta();
  r.tolerance = tolerance;
  r.add("IH_from_radii", ih);
  r.add("area_from_radii", area);
  r.add("grad_l2", grad2);
  r.add("variance", sphere_integral(dev * dev));
  // The identity compares quantities of size |M|; measure residuals there.
  r.settle(left, right, std::max({std::abs(area), std::abs(left), std::abs(right)}));
  return r;
}

double oriented_volume(const SphereMap& map) {
  const auto& g = *map.grid;
  const auto md = map_derivatives(map);
  std::vector<double> density(g.size());
  for (std::size_t i = 0; i < g.n_theta(); ++i) {
    for (std::size_t j = 0; j < g.n_phi(); ++j) {
      const std::size_t k = g.index(i, j);
      density[k] = map.points[k].dot(md.d_theta[k].cross(md.d_phi[k])) / g.sin_colatitude(i);
    }
  }
  return sphere_integral(SphereScalarField(map.grid, std::move(density))) / 3.0;
}

double normal_graph_volume(const SupportField& h, const SphereScalarField& u) {
  // dμ = ρ₁ρ₂ dσ, H dμ = (ρ₁ + ρ₂) dσ, 𝒦 dμ = dσ.
  const auto jac = h.rho1() * h.rho2();
  const double base = sphere_integral(h.h() * jac) / 3.0;
  const auto u2 = u * u;
  const auto series = u * jac + 0.5 * (h.rho1() + h.rho2()) * u2 + (1.0 / 3.0) * (u2 * u);
  return base + sphere_integral(series);
}

InequalityReport normal_graph_volume_check(const SupportField& h, const SphereScalarField& u,
                                           double tolerance) {
  const double series = normal_graph_volume(h, u);
  const auto f = position_map(h);
  const double pullback = oriented_volume(offset_map(f, u, 1.0));

  InequalityReport r;
  r.check = "normal_graph_volume";
  r.relation = Relation::Identity;
  r.resolution = h.grid()->n_theta();
  r.tolerance = tolerance;
  r.add("volume_series", series);
  r.add("volume_pullback", pullback);
  r.add("volume_base", oriented_volume(f));
  r.settle(series, pullback, std::max(std::abs(series), std::abs(pullback)));
  return r;
}

FocalData focal_maps(const SupportField& h) {
  const auto f = position_map(h);
  FocalData fd;
  fd.b1 = offset_map(f, h.rho1(), -1.0);
  fd.b2 = offset_map(f, h.rho2(), -1.0);
  fd.volume1 = oriented_volume(fd.b1);
  fd.volume2 = oriented_volume(fd.b2);
  return fd;
}

InequalityReport focal_volume_identity(const SupportField& h, double tolerance) {
  const auto fd = focal_maps(h);
  const auto gap = h.rho1() - h.rho2();
  const double cubic = sphere_integral(gap * gap * gap) / 6.0;
  const double left = fd.volume1 - fd.volume2;

  InequalityReport r;
  r.check = "focal_volume";
  r.relation = Relation::Identity;
  r.resolution = h.grid()->n_theta();
  r.tolerance = tolerance;
  r.add("V_b1", fd.volume1);
  r.add("V_b2", fd.volume2);
  r.add("V_difference", left);
  r.add("gap_cubed_integral", cubic);
  r.add("max_gap", gap.max());
  r.add("min_gap", gap.min());
  r.add("umbilic_ratio", gap.max() > 0.0 ? gap.min() / gap.max() : 0.0);
  r.require(left >= -1e-10 * std::max(std::abs(fd.volume1), std::abs(fd.volume2)),
            "focal volume difference is negative");
  // Scale by the focal volumes; on spheres both collapse to rounding noise,
  // so keep a floor far below the volume of the body itself.
  const double mean = sphere_integral(h.h()) / (4.0 * pi);
  const double scale = std::max({std::abs(left), std::abs(cubic),
                                 std::abs(fd.volume1) + std::abs(fd.volume2),
                                 1e-24 * mean * mean * mean});
  r.settle(left, cubic, scale);
  if (!r.equality) {
    r.diagnostics.push_back("ordered radii may be non-smooth at umbilics (min gap " +
                            std::to_string(gap.min()) + ")");
  }
  return r;
}

SurfaceReport reverse_minkowski_report(const SupportField& h, double tolerance) {
  const auto s = surface_from_support(h);
  const auto fd = focal_maps(h);
  const auto gap = h.rho1() - h.rho2();
  const double cubic_af = sphere_integral(gap * gap * gap) / (2.0 * std::numbers::sqrt2);
  const double vdiff = fd.volume1 - fd.volume2;

  SurfaceReport r;
  r.check = "reverse_minkowski";
  r.relation = Relation::Inequality;
  r.resolution = h.grid()->n_theta();
  r.tolerance = tolerance;
  r.deficit = s.total_mean_curvature * s.total_mean_curvature - 16.0 * pi * s.area;
  r.bound1 = 8.0 * pi / 3.0 * s.tracefree;
  r.holder = std::cbrt(4.0 * pi) * std::pow(std::max(cubic_af, 0.0), 2.0 / 3.0);
  r.bound2 = 8.0 * pi / 3.0 * std::cbrt(4.0 * pi) *
             std::pow(std::max(3.0 / std::numbers::sqrt2 * vdiff, 0.0), 2.0 / 3.0);
  r.add("IH", s.total_mean_curvature);
  r.add("area", s.area);
  r.add("tracefree", s.tracefree);
  r.add("gauss", s.gauss);
  r.add("deficit", r.deficit);
  r.add("bound1", r.bound1);
  r.add("holder_intermediate", r.holder);
  r.add("bound2", r.bound2);
  r.add("V_b1", fd.volume1);
  r.add("V_b2", fd.volume2);
  const double scale = std::max({s.total_mean_curvature * s.total_mean_curvature * 1e-2,
                                 std::abs(r.deficit), r.bound2});
  r.require(r.deficit >= -tolerance * scale, "Minkowski deficit negative");
  r.require(s.tracefree <= r.holder * (1.0 + tolerance) + tolerance * scale,
            "Hoelder step violated");
  r.require(r.bound1 <= r.bound2 * (1.0 + tolerance) + tolerance * scale,
            "bound1 exceeds bound2");
  r.settle(r.deficit, r.bound1, scale);
  if (!r.passed) {
    for (const auto& [name, value] : r.functionals) {
      r.diagnostics.push_back(name + " = " + std::to_string(value));
    }
  }
  return r;
}

}  // namespace isogauge
