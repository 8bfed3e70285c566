#include "isogauge/plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace isogauge {
namespace {

constexpr double pi = std::numbers::pi;

// Strict pointwise inequalities are enforced with this relative floor.
constexpr double kConvexityFloor = 1e-8;

void require_matching(const SupportProfile& p, const NormProfile& h) {
  if (p.size() != h.size()) {
    throw ValidationError("support and norm profiles differ in resolution: " +
                          std::to_string(p.size()) + " vs " + std::to_string(h.size()));
  }
}

Eigen::Vector2d u_of(double t) { return {std::cos(t), std::sin(t)}; }
Eigen::Vector2d tau_of(double t) { return {-std::sin(t), std::cos(t)}; }

Eigen::Vector2d normal_at(double t, double h, double h1) {
  // N = -h_θ τ + h n with n = -u.
  return -h1 * tau_of(t) - h * u_of(t);
}

PlanarFront front_from(std::size_t n, auto&& point, bool immersed) {
  PlanarFront f;
  f.points.resize(n);
  for (std::size_t j = 0; j < n; ++j) f.points[j] = point(j);
  f.immersed = immersed;
  return f;
}

double plane_scale(double lhs, double rhs, double extra) {
  return std::max({std::abs(lhs), std::abs(rhs), std::abs(extra)});
}

}  // namespace

NormProfile::NormProfile(PeriodicSamples h)
    : h_(std::move(h)),
      h1_(periodic_derivative(h_, 1)),
      h2_(periodic_derivative(h_, 2)),
      radius_(h2_ + h_) {
  const std::size_t n = h_.size();
  const double scale = h_.max_abs();
  for (std::size_t j = 0; j < n; ++j) {
    if (h_[j] <= kConvexityFloor * scale) {
      throw ValidationError("norm profile must be positive; fails at node " + std::to_string(j));
    }
    if (std::abs(h_[j] - h_[(j + n / 2) % n]) > 1e-10 * scale) {
      throw ValidationError("norm profile is not centrally symmetric at node " +
                            std::to_string(j));
    }
  }
  const double rscale = radius_.max_abs();
  for (std::size_t j = 0; j < n; ++j) {
    if (radius_[j] <= kConvexityFloor * rscale) {
      throw ValidationError("norm profile violates h_θθ + h > 0 at node " + std::to_string(j));
    }
  }
}

SupportProfile::SupportProfile(PeriodicSamples p)
    : p_(std::move(p)),
      p1_(periodic_derivative(p_, 1)),
      p2_(periodic_derivative(p_, 2)),
      radius_(p2_ + p_) {
  const double rscale = radius_.max_abs();
  for (std::size_t j = 0; j < p_.size(); ++j) {
    if (!(radius_[j] > kConvexityFloor * rscale)) {
      throw ValidationError("support profile violates p_θθ + p > 0 at node " +
                            std::to_string(j));
    }
  }
}

PeriodicSamples PlanarFront::x() const {
  std::vector<double> v(points.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = points[j].x();
  return PeriodicSamples(std::move(v));
}

PeriodicSamples PlanarFront::y() const {
  std::vector<double> v(points.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = points[j].y();
  return PeriodicSamples(std::move(v));
}

PlanarFront curve_from_support(const SupportProfile& p) {
  const std::size_t n = p.size();
  return front_from(
      n,
      [&](std::size_t j) {
        const double t = PeriodicSamples::node(j, n);
        return Eigen::Vector2d(p.p()[j] * u_of(t) + p.p_theta()[j] * tau_of(t));
      },
      true);
}

double minkowski_length(const SupportProfile& p, const NormProfile& h) {
  require_matching(p, h);
  return periodic_integral(h.h() * p.radius());
}

double signed_area(const PlanarFront& c) {
  const auto x = c.x();
  const auto y = c.y();
  const auto dx = periodic_derivative(x, 1);
  const auto dy = periodic_derivative(y, 1);
  return 0.5 * periodic_integral(x * dy - y * dx);
}

PeriodicSamples minkowski_curvature(const SupportProfile& p, const NormProfile& h) {
  require_matching(p, h);
  return h.radius() / p.radius();
}

PlanarFront isoperimetrix(const NormProfile& h) {
  const std::size_t n = h.size();
  return front_from(
      n,
      [&](std::size_t j) {
        return normal_at(PeriodicSamples::node(j, n), h.h()[j], h.h_theta()[j]);
      },
      true);
}

PeriodicSamples isoperimetrix_support(const NormProfile& h) {
  const std::size_t n = h.size();
  const auto coeffs = FourierCoefficients::analyze(h.h());
  auto point = [&](double t) { return normal_at(t, coeffs.evaluate(t, 0), coeffs.evaluate(t, 1)); };

  const std::size_t dense = 4 * n;
  std::vector<Eigen::Vector2d> samples(dense);
  for (std::size_t k = 0; k < dense; ++k) samples[k] = point(PeriodicSamples::node(k, dense));

  const double step = 2.0 * pi / static_cast<double>(dense);
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  std::vector<double> q(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Eigen::Vector2d dir = u_of(PeriodicSamples::node(j, n));
    std::size_t best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < dense; ++k) {
      const double v = samples[k].dot(dir);
      if (v > best_val) {
        best_val = v;
        best = k;
      }
    }
    double a = PeriodicSamples::node(best, dense) - step;
    double b = a + 2.0 * step;
    double c = b - golden * (b - a);
    double d = a + golden * (b - a);
    double fc = point(c).dot(dir);
    double fd = point(d).dot(dir);
    while (b - a > 1e-9) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - golden * (b - a);
        fc = point(c).dot(dir);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + golden * (b - a);
        fd = point(d).dot(dir);
      }
    }
    q[j] = std::max({best_val, fc, fd});
  }
  return PeriodicSamples(std::move(q));
}

PlanarFront minkowski_evolute(const SupportProfile& p, const NormProfile& h) {
  require_matching(p, h);
  const auto gamma = curve_from_support(p);
  const auto kappa = minkowski_curvature(p, h);
  const std::size_t n = p.size();
  return front_from(
      n,
      [&](std::size_t j) {
        const double t = PeriodicSamples::node(j, n);
        return Eigen::Vector2d(gamma.points[j] +
                               normal_at(t, h.h()[j], h.h_theta()[j]) / kappa[j]);
      },
      false);
}

PlanarFront minkowski_normal_graph(const SupportProfile& p, const NormProfile& h,
                                   const PeriodicSamples& phi) {
  require_matching(p, h);
  if (phi.size() != p.size()) throw ValidationError("normal-graph offset has wrong resolution");
  const auto gamma = curve_from_support(p);
  const std::size_t n = p.size();
  return front_from(
      n,
      [&](std::size_t j) {
        const double t = PeriodicSamples::node(j, n);
        return Eigen::Vector2d(gamma.points[j] + phi[j] * normal_at(t, h.h()[j], h.h_theta()[j]));
      },
      false);
}

InequalityReport total_curvature_identity(const SupportProfile& p, const NormProfile& h,
                                          double tolerance) {
  require_matching(p, h);
  const auto kappa = minkowski_curvature(p, h);
  // dσ = h ds = h (p_θθ + p) dθ.
  const auto dsigma = h.h() * p.radius();
  const double total = periodic_integral(kappa * dsigma);
  const double iso_area = signed_area(isoperimetrix(h));

  InequalityReport r;
  r.check = "total_curvature";
  r.relation = Relation::Identity;
  r.resolution = p.size();
  r.tolerance = tolerance;
  r.add("total_minkowski_curvature", total);
  r.add("iso_area", iso_area);
  r.settle(total, 2.0 * iso_area, std::max(std::abs(total), std::abs(2.0 * iso_area)));
  return r;
}

InequalityReport normal_graph_area(const SupportProfile& p, const NormProfile& h,
                                   const PeriodicSamples& phi, double tolerance) {
  require_matching(p, h);
  const auto kappa = minkowski_curvature(p, h);
  const auto dsigma = h.h() * p.radius();
  const auto inv_kappa = kappa.map([](double k) { return 1.0 / k; });
  const double direct = signed_area(minkowski_normal_graph(p, h, phi));
  const double base_area = 0.5 * periodic_integral(p.p() * p.radius());
  const auto dev = phi - inv_kappa;
  const double square = 0.5 * periodic_integral(kappa * dev * dev * dsigma);
  const double focal = 0.5 * periodic_integral(inv_kappa * dsigma);
  const double formula = base_area + square - focal;
  const double bound = base_area - focal;

  InequalityReport r;
  r.check = "normal_graph_area";
  r.relation = Relation::Identity;
  r.resolution = p.size();
  r.tolerance = tolerance;
  r.add("area_direct", direct);
  r.add("area_formula", formula);
  r.add("curve_area", base_area);
  r.add("square_term", square);
  r.add("focal_term", focal);
  r.add("lower_bound", bound);
  const double scale = std::max({std::abs(direct), std::abs(formula), base_area, focal});
  r.add("bound_margin", direct - bound);
  r.add("bound_equality", std::abs(direct - bound) <= tolerance * scale ? 1.0 : 0.0);
  r.require(direct - bound >= -tolerance * scale, "normal graph falls below the evolute bound");
  r.settle(direct, formula, scale);
  return r;
}

PlaneReport reverse_iso_report(const SupportProfile& p, const NormProfile& h, double tolerance) {
  require_matching(p, h);
  const double length = minkowski_length(p, h);
  const double area = signed_area(curve_from_support(p));
  const double iso_area = signed_area(isoperimetrix(h));
  const double evolute_area = signed_area(minkowski_evolute(p, h));
  const double lhs = length * length - 4.0 * area * iso_area;
  const double rhs = 4.0 * iso_area * std::abs(evolute_area);

  PlaneReport r;
  r.check = "reverse_iso";
  r.relation = Relation::Inequality;
  r.resolution = p.size();
  r.tolerance = tolerance;
  r.length = length;
  r.area = area;
  r.iso_area = iso_area;
  r.evolute_area = evolute_area;
  r.ratio = length * length / (4.0 * area * iso_area);
  r.add("L", length);
  r.add("A_gamma", area);
  r.add("A_iso", iso_area);
  r.add("A_evolute", evolute_area);
  r.add("ratio", r.ratio);
  r.add("ratio_minus_one", r.ratio - 1.0);
  const double scale = plane_scale(lhs, rhs, length * length);
  r.require(lhs >= -tolerance * scale, "anisotropic isoperimetric inequality violated");
  r.require(evolute_area <= tolerance * std::abs(area),
            "evolute has positive signed area");
  r.settle(lhs, rhs, scale);
  return r;
}

PlaneReport hurwitz_report(const SupportProfile& p, double tolerance) {
  const auto& radius = p.radius();
  const double length = periodic_integral(radius);
  const double area = 0.5 * periodic_integral(p.p() * radius);
  const double evolute_area = -0.5 * periodic_integral(p.p_theta_theta() * radius);
  const double lhs = length * length - 4.0 * pi * area;
  const double rhs = pi * std::abs(evolute_area);
  const auto coeffs = FourierCoefficients::analyze(p.p());

  PlaneReport r;
  r.check = "hurwitz";
  r.relation = Relation::Inequality;
  r.resolution = p.size();
  r.tolerance = tolerance;
  r.length = length;
  r.area = area;
  r.iso_area = pi;
  r.evolute_area = evolute_area;
  r.ratio = length * length / (4.0 * pi * area);
  r.add("L", length);
  r.add("A_gamma", area);
  r.add("A_evolute", evolute_area);
  r.add("ratio", r.ratio);
  r.add("high_mode_energy", coeffs.energy_from(3));
  const double scale = plane_scale(lhs, rhs, length * length);
  r.require(lhs >= -tolerance * scale, "isoperimetric inequality violated");
  r.settle(lhs, rhs, scale);
  return r;
}

}  // namespace isogauge
