#include <doctest.h>

#include <Eigen/Geometry>

#include <cmath>
#include <numbers>

#include "isogauge/random.hpp"
#include "isogauge/sphere_curve.hpp"

using namespace isogauge;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<Eigen::Vector3d> small_circle(std::size_t n, double alpha,
                                          double warp = 0.0) {
  std::vector<Eigen::Vector3d> p(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double u = PeriodicSamples::node(j, n);
    const double v = u + warp * std::sin(u);
    p[j] = {std::sin(alpha) * std::cos(v), std::sin(alpha) * std::sin(v), std::cos(alpha)};
  }
  return p;
}

PlanarFront planar_ellipse(std::size_t n, double a, double b, double cx = 0.0, double cy = 0.0) {
  PlanarFront f;
  for (std::size_t j = 0; j < n; ++j) {
    const double u = PeriodicSamples::node(j, n);
    f.points.emplace_back(cx + a * std::cos(u), cy + b * std::sin(u));
  }
  return f;
}

// Euclidean curvature of u -> P(u)/|P(u)| with P = (a cos u, b sin u, 1), by
// the chain rule on exact derivatives of P.
double lifted_ellipse_curvature(double a, double b, double u) {
  const Eigen::Vector3d P(a * std::cos(u), b * std::sin(u), 1.0);
  const Eigen::Vector3d P1(-a * std::sin(u), b * std::cos(u), 0.0);
  const Eigen::Vector3d P2(-a * std::cos(u), -b * std::sin(u), 0.0);
  const double r = P.norm();
  const double r1 = P.dot(P1) / r;
  const double r2 = (P1.dot(P1) + P.dot(P2)) / r - P.dot(P1) * P.dot(P1) / (r * r * r);
  const Eigen::Vector3d g1 = P1 / r - P * r1 / (r * r);
  const Eigen::Vector3d g2 =
      P2 / r - 2.0 * P1 * r1 / (r * r) - P * r2 / (r * r) + 2.0 * P * r1 * r1 / (r * r * r);
  return g1.cross(g2).norm() / std::pow(g1.norm(), 3);
}

// Solid angle of the cone over the planar ellipse at height 1:
// ab ∫ (1 - (1 + c(φ))^{-1/2}) / c(φ) dφ with c = a²cos²φ + b²sin²φ.
double lifted_ellipse_area(double a, double b) {
  const int m = 4096;
  double s = 0.0;
  for (int i = 0; i < m; ++i) {
    const double phi = 2.0 * pi * i / m;
    const double c = a * a * std::cos(phi) * std::cos(phi) + b * b * std::sin(phi) * std::sin(phi);
    s += (1.0 - 1.0 / std::sqrt(1.0 + c)) / c;
  }
  return a * b * s * 2.0 * pi / m;
}

Eigen::Matrix3d rotation() {
  return (Eigen::AngleAxisd(0.7, Eigen::Vector3d(1.0, 2.0, -0.5).normalized()) *
          Eigen::AngleAxisd(-1.3, Eigen::Vector3d::UnitZ()))
      .toRotationMatrix();
}

}  // namespace

TEST_CASE("curve validation") {
  auto pts = small_circle(64, 1.0);
  pts[5] *= 1.0 + 1e-9;
  CHECK_THROWS_AS(SphericalCurve{pts}, ValidationError);
  CHECK_THROWS_AS(SphericalCurve{small_circle(7, 1.0)}, ValidationError);
  // Equator: geodesic, so not strictly convex.
  CHECK_THROWS_AS(frame_and_curvature(SphericalCurve(small_circle(64, pi / 2))), ValidationError);
  // Clockwise circle: negative geodesic curvature.
  auto cw = small_circle(64, 1.0);
  std::reverse(cw.begin(), cw.end());
  CHECK_THROWS_AS(frame_and_curvature(SphericalCurve(cw)), ValidationError);
  // Figure eight in the gnomonic plane.
  PlanarFront eight;
  for (std::size_t j = 0; j < 128; ++j) {
    const double u = PeriodicSamples::node(j, 128);
    eight.points.emplace_back(0.5 * std::sin(u), 0.3 * std::sin(2 * u));
  }
  CHECK_THROWS_AS(gnomonic_lift(eight, 1.0), ValidationError);
  PlanarFront point;
  point.points.assign(16, Eigen::Vector2d(0.2, 0.1));
  CHECK_THROWS_AS(gnomonic_lift(point, 1.0), ValidationError);
  CHECK_THROWS_AS(gnomonic_lift(planar_ellipse(64, 20.0, 20.0), 1.0), ValidationError);
}

TEST_CASE("geodesic circle at colatitude π/3") {
  const double alpha = pi / 3;
  // Non-uniform parametrisation; quantities must not depend on it.
  SphericalCurve c(small_circle(128, alpha, 0.4));
  const auto f = frame_and_curvature(c);
  for (std::size_t j = 0; j < f.size(); ++j) {
    CHECK(f.kg[j] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-11));
  }
  const auto m = length_area(f);
  CHECK(m.length == doctest::Approx(pi * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(m.area == doctest::Approx(pi).epsilon(1e-11));
  CHECK(m.total_curvature == doctest::Approx(pi).epsilon(1e-11));
  CHECK(m.elastic == doctest::Approx(2.0 * pi).epsilon(1e-11));
  CHECK(std::abs(remainder_functional(f)) < 1e-18);

  const auto r = reverse_iso_identity_report(c);
  CHECK(r.passed);
  CHECK(r.equality);
  CHECK(std::abs(r.lhs) < 1e-9);
  CHECK(std::abs(r.rhs) < 1e-9);
  CHECK(std::abs(r.remainder) < 1e-9);

  const auto e = spherical_evolute(f);
  CHECK(e.cusps.empty());
  for (std::size_t j = 0; j < f.size(); ++j) {
    CHECK((e.points[j] - Eigen::Vector3d::UnitZ()).norm() < 1e-12);
    CHECK(e.speed[j] < 1e-9);
  }
}

TEST_CASE("geodesic circle near the equator") {
  const double alpha = pi / 2 - 0.1;
  const auto f = frame_and_curvature(SphericalCurve(small_circle(64, alpha)));
  const auto m = length_area(f);
  CHECK(m.area == doctest::Approx(2.0 * pi * (1.0 - std::cos(alpha))).epsilon(1e-12));
  CHECK(std::abs(m.area - (2.0 * pi - m.total_curvature)) < 1e-10);
}

TEST_CASE("gnomonic lift of the unit circle is the circle at colatitude π/4") {
  const auto f = frame_and_curvature(gnomonic_lift(planar_ellipse(64, 1.0, 1.0), 1.0));
  for (std::size_t j = 0; j < f.size(); ++j) {
    CHECK(f.gamma[j].z() == doctest::Approx(std::cos(pi / 4)).epsilon(1e-15));
    CHECK(f.kg[j] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("frame equations") {
  const auto f = frame_and_curvature(gnomonic_lift(planar_ellipse(256, 0.5, 0.3), 1.0));
  for (std::size_t j = 0; j < f.size(); ++j) {
    CHECK(std::abs(f.gamma[j].dot(f.t[j])) < 1e-9);
    CHECK(std::abs(f.t[j].norm() - 1.0) < 1e-12);
    CHECK(std::abs(f.eta[j].norm() - 1.0) < 1e-9);
  }
  std::vector<Eigen::Vector3d> ts(f.size()), es(f.size());
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<double> tc(f.size()), ec(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
      tc[j] = f.t[j][axis];
      ec[j] = f.eta[j][axis];
    }
    const auto dt = periodic_derivative(PeriodicSamples(tc), 1) / f.speed;
    const auto de = periodic_derivative(PeriodicSamples(ec), 1) / f.speed;
    for (std::size_t j = 0; j < f.size(); ++j) {
      ts[j][axis] = dt[j];
      es[j][axis] = de[j];
    }
  }
  for (std::size_t j = 0; j < f.size(); ++j) {
    CHECK((ts[j] - (-f.gamma[j] + f.kg[j] * f.eta[j])).norm() < 1e-9);
    CHECK((es[j] + f.kg[j] * f.t[j]).norm() < 1e-9);
  }
}

TEST_CASE("gnomonic ellipse against Frenet and solid-angle oracles") {
  const double a = 0.5, b = 0.3;
  for (std::size_t n : {256, 512}) {
    SphericalCurve c = gnomonic_lift(planar_ellipse(n, a, b), 1.0);
    const auto f = frame_and_curvature(c);
    for (std::size_t j = 0; j < n; j += 5) {
      const double u = PeriodicSamples::node(j, n);
      CHECK(std::hypot(1.0, f.kg[j]) ==
            doctest::Approx(lifted_ellipse_curvature(a, b, u)).epsilon(1e-7));
    }
    const auto m = length_area(f);
    CHECK(m.area == doctest::Approx(lifted_ellipse_area(a, b)).epsilon(1e-10));
    const auto r = reverse_iso_identity_report(c);
    CHECK(r.passed);
    CHECK_FALSE(r.equality);
    CHECK(r.lhs > 0.0);
    CHECK(r.remainder > 0.0);
    CHECK(std::abs(r.get("identity_residual")) < 1e-8 * std::max(r.length * r.length, 4 * pi * pi));
    CHECK(r.rhs - r.lhs > r.oscillation_bound);
    CHECK(r.oscillation_bound > 0.0);
    CHECK(r.remainder == doctest::Approx(r.get("R_single_integral")).epsilon(1e-8));

    const auto e = spherical_evolute(f);
    REQUIRE(e.cusps.size() == 4);
    // Vertices of the lifted ellipse sit on its symmetry axes.
    for (double u : e.cusps) {
      const double quarter = u / (pi / 2);
      CHECK(std::abs(quarter - std::round(quarter)) < 1e-9);
      CHECK(u >= 0.0);
      CHECK(u < 2.0 * pi);
    }
    for (const auto& q : e.points) CHECK(std::abs(q.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("evolute speed formula") {
  const auto f = frame_and_curvature(gnomonic_lift(planar_ellipse(256, 0.4, 0.25, 0.1, -0.05), 1.0));
  const auto e = spherical_evolute(f);
  std::vector<Eigen::Vector3d> d(f.size());
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<double> c(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) c[j] = e.points[j][axis];
    const auto dc = periodic_derivative(PeriodicSamples(c), 1) / f.speed;
    for (std::size_t j = 0; j < f.size(); ++j) d[j][axis] = dc[j];
  }
  for (std::size_t j = 0; j < f.size(); ++j) CHECK(std::abs(d[j].norm() - e.speed[j]) < 1e-8);
}

TEST_CASE("rotation invariance") {
  const auto base = gnomonic_lift(planar_ellipse(256, 0.45, 0.2, 0.2, 0.1), 1.0);
  auto pts = base.points();
  const auto rot = rotation();
  for (auto& p : pts) p = (rot * p).normalized();
  const auto a = reverse_iso_identity_report(base);
  const auto b = reverse_iso_identity_report(SphericalCurve(pts));
  REQUIRE(a.functionals.size() == b.functionals.size());
  for (std::size_t k = 0; k < a.functionals.size(); ++k) {
    const double va = a.functionals[k].second, vb = b.functionals[k].second;
    if (a.functionals[k].first == "identity_residual") continue;
    CHECK(std::abs(va - vb) <= 1e-10 * std::max(std::abs(va), 1.0));
  }
}

TEST_CASE("a tilted geodesic circle is recognised through the gnomonic chart") {
  const auto rot = rotation();
  Eigen::Vector3d axis = rot * Eigen::Vector3d::UnitZ();
  if (axis.z() < 0) axis = -axis;
  // Circle of angular radius 0.3 about an axis with positive height.
  const Eigen::Vector3d e1 = axis.unitOrthogonal();
  const Eigen::Vector3d e2 = axis.cross(e1);
  PlanarFront chart;
  const std::size_t n = 256;
  for (std::size_t j = 0; j < n; ++j) {
    const double u = PeriodicSamples::node(j, n);
    const Eigen::Vector3d p =
        std::cos(0.3) * axis + std::sin(0.3) * (std::cos(u) * e1 + std::sin(u) * e2);
    chart.points.emplace_back(p.x() / p.z(), p.y() / p.z());
  }
  const auto r = reverse_iso_identity_report(gnomonic_lift(chart, 1.0));
  CHECK(r.passed);
  CHECK(r.equality);
  CHECK(std::abs(r.remainder) < 1e-9);
  CHECK(r.area == doctest::Approx(2.0 * pi * (1.0 - std::cos(0.3))).epsilon(1e-10));

  // A planar circle off the axis lifts to an oblique cone section.
  const auto off = reverse_iso_identity_report(gnomonic_lift(planar_ellipse(n, 0.4, 0.4, 0.6, 0.0), 1.0));
  CHECK(off.passed);
  CHECK_FALSE(off.equality);
  CHECK(off.remainder > 1e-6);
}

TEST_CASE("random gnomonic ovals") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    PlanarFront f;
    const double a = rng.uniform(0.2, 0.8), b = rng.uniform(0.1, 0.6);
    const double cx = rng.uniform(-0.4, 0.4), cy = rng.uniform(-0.4, 0.4);
    const double height = rng.uniform(0.7, 1.5);
    f = planar_ellipse(384, a, b, cx, cy);
    const auto r = reverse_iso_identity_report(gnomonic_lift(f, height));
    INFO("trial " << trial);
    CHECK(r.passed);
    CHECK(r.lhs >= 0.0);
    CHECK(r.remainder >= 0.0);
    CHECK(r.remainder == doctest::Approx(r.get("R_single_integral")).epsilon(1e-8));
  }
}

TEST_CASE("oscillation bound does not depend on where the nodes fall") {
  // Vertices of a centred ellipse sit on nodes; a phase shift moves them
  // between nodes, so a nodal maximum of k_g would drop.
  const std::size_t n = 256;
  const double a = 0.8, b = 0.2;
  PlanarFront shifted;
  for (std::size_t j = 0; j < n; ++j) {
    const double u = PeriodicSamples::node(j, n) + 0.43 * 2.0 * pi / n;
    shifted.points.emplace_back(a * std::cos(u), b * std::sin(u));
  }
  const auto on = reverse_iso_identity_report(gnomonic_lift(planar_ellipse(n, a, b), 1.0));
  const auto off = reverse_iso_identity_report(gnomonic_lift(shifted, 1.0));
  CHECK(off.oscillation_bound == doctest::Approx(on.oscillation_bound).epsilon(1e-11));

  const double peak = std::max(lifted_ellipse_curvature(a, b, 0.0),
                               lifted_ellipse_curvature(a, b, pi / 2));
  const auto f = frame_and_curvature(gnomonic_lift(planar_ellipse(n, a, b), 1.0));
  CHECK(std::sqrt(1.0 + f.kg.max() * f.kg.max()) == doctest::Approx(peak).epsilon(1e-10));
}
