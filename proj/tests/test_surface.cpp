#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isogauge/families.hpp"
#include "isogauge/surface.hpp"

using namespace isogauge;

namespace {

constexpr double pi = std::numbers::pi;

// 2π ∫_0^π f(θ) sin θ dθ by a composite Simpson rule on 20000 panels.
double zonal_integral(const std::function<double(double)>& f) {
  const int m = 20000;
  const double step = pi / m;
  double s = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double t = i * step;
    const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * f(t) * std::sin(t);
  }
  return 2.0 * pi * s * step / 3.0;
}

double prolate_area(double a, double c) {
  const double e = std::sqrt(1.0 - a * a / (c * c));
  return 2.0 * pi * a * a * (1.0 + c / (a * e) * std::asin(e));
}

}  // namespace

TEST_CASE("unit sphere") {
  auto g = SphereGrid::make(16, 32);
  SupportField h(SphereScalarField::constant(g, 1.0));
  const auto s = surface_from_support(h);
  CHECK(s.total_mean_curvature == doctest::Approx(8.0 * pi).epsilon(1e-14));
  CHECK(s.area == doctest::Approx(4.0 * pi).epsilon(1e-14));
  CHECK(s.gauss == doctest::Approx(4.0 * pi).epsilon(1e-13));
  CHECK(s.tracefree < 1e-28);
  for (std::size_t i = 0; i < g->n_theta(); ++i) {
    for (std::size_t j = 0; j < g->n_phi(); ++j) {
      CHECK((s.position.points[g->index(i, j)] - g->point(i, j)).norm() < 1e-13);
    }
  }
  CHECK(oriented_volume(s.position) == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-13));
  const auto r = reverse_minkowski_report(h);
  CHECK(r.passed);
  CHECK(r.equality);
  CHECK(std::abs(r.deficit) < 1e-12);
  CHECK(r.bound2 < 1e-12);
}

TEST_CASE("non-convex support functions are rejected with their nodes") {
  auto g = SphereGrid::make(24, 48);
  const auto bad = SphereScalarField::constant(g, 1.0) + 0.5 * harmonic_field(g, 3, 1);
  try {
    SupportField h(bad);
    FAIL("expected rejection");
  } catch (const ConvexityError& e) {
    CHECK_FALSE(e.nodes().empty());
    for (auto k : e.nodes()) CHECK(k < g->size());
  }
  CHECK_THROWS_AS(SupportField(SphereScalarField::constant(g, -1.0)), ValidationError);
}

TEST_CASE("translation leaves the geometry unchanged") {
  auto g = SphereGrid::make(32, 64);
  Rng rng(3);
  const auto h0 = random_support_field(rng, g);
  SupportField a(h0);
  SupportField b(h0 + 0.4 * harmonic_field(g, 1, 1) - 0.3 * harmonic_field(g, 1, 0));
  const auto ra = reverse_minkowski_report(a);
  const auto rb = reverse_minkowski_report(b);
  CHECK(rb.deficit == doctest::Approx(ra.deficit).epsilon(1e-10));
  CHECK(rb.bound1 == doctest::Approx(ra.bound1).epsilon(1e-10));
  CHECK(rb.get("area") == doctest::Approx(ra.get("area")).epsilon(1e-12));
  CHECK((a.rho1() - b.rho1()).max_abs() < 1e-10);
}

TEST_CASE("spheroid radii match the meridian-curve oracle") {
  const double a = 1.0, c = 1.2;
  auto g = SphereGrid::make(64, 128);
  SupportField h(spheroid_support(g, a, c));
  for (std::size_t i = 0; i < g->n_theta(); ++i) {
    const double x = g->cos_colatitude(i);
    const double hv = std::sqrt(a * a * (1.0 - x * x) + c * c * x * x);
    const double parallel = a * a / hv;
    const double meridian = a * a * c * c / (hv * hv * hv);
    for (std::size_t j = 0; j < g->n_phi(); j += 17) {
      CHECK(h.rho1().at(i, j) == doctest::Approx(meridian).epsilon(1e-9));
      CHECK(h.rho2().at(i, j) == doctest::Approx(parallel).epsilon(1e-9));
    }
  }
  // An odd Gauss-Legendre order puts a ring on the equator: (1.44, 1) there.
  auto odd = SphereGrid::make(65, 128);
  SupportField e(spheroid_support(odd, a, c));
  CHECK(odd->cos_colatitude(32) == 0.0);
  CHECK(e.rho1().at(32, 5) == doctest::Approx(1.44).epsilon(1e-10));
  CHECK(e.rho2().at(32, 5) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(e.rho1().max() == doctest::Approx(1.44).epsilon(1e-10));
}

TEST_CASE("spheroid functionals against closed forms") {
  const double a = 1.0, c = 1.3;
  const auto h_fn = [&](double t) {
    return std::sqrt(a * a * std::sin(t) * std::sin(t) + c * c * std::cos(t) * std::cos(t));
  };
  const double ih = 2.0 * zonal_integral(h_fn);
  for (std::size_t n : {64, 96}) {
    auto g = SphereGrid::make(n, 2 * n);
    SupportField h(spheroid_support(g, a, c));
    const auto s = surface_from_support(h);
    CHECK(s.area == doctest::Approx(prolate_area(a, c)).epsilon(1e-9));
    CHECK(s.area_from_radii == doctest::Approx(prolate_area(a, c)).epsilon(1e-9));
    CHECK(s.total_mean_curvature == doctest::Approx(ih).epsilon(1e-9));
    CHECK(s.gauss == doctest::Approx(4.0 * pi).epsilon(1e-9));
    CHECK(oriented_volume(s.position) == doctest::Approx(4.0 * pi / 3.0 * a * a * c).epsilon(1e-9));
    const auto r = reverse_minkowski_report(h);
    CHECK(r.passed);
    CHECK(r.deficit > 0.0);
    CHECK(r.deficit <= r.bound1);
    CHECK(r.bound1 <= r.bound2);
    CHECK(r.bound2 == doctest::Approx(8.0 * pi / 3.0 * r.holder).epsilon(1e-9));
  }
}

TEST_CASE("spheroid reports agree across resolutions") {
  SupportField lo(spheroid_support(SphereGrid::make(64, 128), 1.1, 0.8));
  SupportField hi(spheroid_support(SphereGrid::make(96, 192), 1.1, 0.8));
  const auto a = reverse_minkowski_report(lo);
  const auto b = reverse_minkowski_report(hi);
  CHECK(a.deficit == doctest::Approx(b.deficit).epsilon(1e-9));
  CHECK(a.bound1 == doctest::Approx(b.bound1).epsilon(1e-9));
  CHECK(a.bound2 == doctest::Approx(b.bound2).epsilon(1e-8));
}

TEST_CASE("Gauss-Bonnet and the deficit identity") {
  auto g = SphereGrid::make(48, 96);
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    SupportField h(random_support_field(rng, g, 4, 0.08));
    const auto gb = gauss_bonnet_check(h);
    CHECK(gb.passed);
    CHECK(gb.get("minkowski_gap") >= 0.0);
    const auto d = deficit_identity_check(h);
    CHECK(d.passed);
    const auto s = surface_from_support(h);
    CHECK(s.area == doctest::Approx(s.area_from_radii).epsilon(1e-11));
    CHECK(s.total_mean_curvature == doctest::Approx(s.mean_curvature_from_radii).epsilon(1e-11));
  }
}

TEST_CASE("deficit identity on single harmonics") {
  // h = 1 + ε Y_lm: right side ε²(l(l+1)/2 - 1).
  auto g = SphereGrid::make(32, 64);
  const double eps = 0.02;
  for (int l = 1; l <= 4; ++l) {
    for (int m = -l; m <= l; ++m) {
      SupportField h(SphereScalarField::constant(g, 1.0) + eps * harmonic_field(g, l, m));
      const auto d = deficit_identity_check(h);
      CHECK(d.passed);
      CHECK(d.rhs == doctest::Approx(eps * eps * (0.5 * l * (l + 1) - 1.0)).epsilon(1e-10));
    }
  }
}

TEST_CASE("normal graph volume series") {
  auto g = SphereGrid::make(24, 48);
  SupportField sphere(SphereScalarField::constant(g, 1.0));
  for (double c : {-0.4, 0.25, 1.5}) {
    const double exact = 4.0 * pi / 3.0 * std::pow(1.0 + c, 3);
    CHECK(normal_graph_volume(sphere, SphereScalarField::constant(g, c)) ==
          doctest::Approx(exact).epsilon(1e-13));
  }
  SupportField big(SphereScalarField::constant(g, 1.5));
  CHECK(oriented_volume(surface_from_support(big).position) == doctest::Approx(4.5 * pi).epsilon(1e-13));

  auto g2 = SphereGrid::make(48, 96);
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    SupportField h(random_support_field(rng, g2));
    const auto u = random_smooth_field(rng, g2, 4, 0.1);
    const auto r = normal_graph_volume_check(h, u);
    CHECK(r.passed);
  }
}

TEST_CASE("focal volume identity") {
  SupportField spheroid(spheroid_support(SphereGrid::make(64, 128), 1.0, 1.4));
  const auto s = focal_volume_identity(spheroid, 1e-10);
  CHECK(s.passed);
  CHECK(s.lhs > 0.0);

  SupportField zonal(zonal_support(SphereGrid::make(64, 128), {1.0, 0.0, 0.06, 0.0, 0.015}));
  CHECK(focal_volume_identity(zonal, 1e-10).passed);

  // Generic surfaces carry umbilics where the ordered radii are only
  // Lipschitz, so the quadrature converges algebraically.
  auto g = SphereGrid::make(64, 128);
  Rng rng(42);
  for (int trial = 0; trial < 6; ++trial) {
    SupportField h(random_support_field(rng, g));
    const auto r = focal_volume_identity(h, 1e-5);
    CHECK(r.passed);
    CHECK(r.get("V_difference") > 0.0);
  }
}

TEST_CASE("reverse chain on random surfaces") {
  auto g = SphereGrid::make(48, 96);
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    SupportField h(random_support_field(rng, g));
    const auto r = reverse_minkowski_report(h);
    INFO("trial " << trial);
    CHECK(r.passed);
    CHECK(r.deficit >= 0.0);
    CHECK(r.deficit <= r.bound1);
    CHECK(r.bound1 <= r.bound2 * (1.0 + 1e-8));
    CHECK(r.get("tracefree") <= r.holder * (1.0 + 1e-8));
  }
}

TEST_CASE("scaling powers") {
  auto g = SphereGrid::make(48, 96);
  Rng rng(5);
  const auto h0 = random_support_field(rng, g);
  const double s = 1.7;
  const auto a = reverse_minkowski_report(SupportField(h0));
  const auto b = reverse_minkowski_report(SupportField(s * h0));
  CHECK(b.get("IH") == doctest::Approx(s * a.get("IH")).epsilon(1e-12));
  CHECK(b.get("area") == doctest::Approx(s * s * a.get("area")).epsilon(1e-12));
  CHECK(b.deficit == doctest::Approx(s * s * a.deficit).epsilon(1e-9));
  CHECK(b.bound1 == doctest::Approx(s * s * a.bound1).epsilon(1e-12));
  CHECK(b.bound2 == doctest::Approx(s * s * a.bound2).epsilon(1e-9));
  CHECK(b.get("V_b1") == doctest::Approx(s * s * s * a.get("V_b1")).epsilon(1e-9));
}
