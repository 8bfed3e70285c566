#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "isogauge/families.hpp"
#include "isogauge/plane.hpp"

using namespace isogauge;

namespace {

constexpr double pi = std::numbers::pi;

PeriodicSamples sampled(std::size_t n, const std::function<double(double)>& f) {
  return PeriodicSamples::sample(n, f);
}

// Sixth-order central difference of a vector function of θ.
Eigen::Vector2d fd6(const std::function<Eigen::Vector2d(double)>& f, double t, double step) {
  return (f(t + 3 * step) - 9.0 * f(t + 2 * step) + 45.0 * f(t + step) - 45.0 * f(t - step) +
          9.0 * f(t - 2 * step) - f(t - 3 * step)) /
         (60.0 * step);
}

// Fourier-side Euclidean oracle for p = a0 + Σ c_k: L² - 4πA = 2π² Σ(k²-1)|c_k|²
// and π|A(e)| = (π²/2) Σ k²(k²-1)|c_k|².
struct EuclideanOracle {
  double deficit = 0.0;
  double bound = 0.0;
};

EuclideanOracle euclidean_oracle(const std::vector<double>& a, const std::vector<double>& b) {
  EuclideanOracle o;
  for (std::size_t k = 1; k < a.size(); ++k) {
    const double k2 = static_cast<double>(k * k);
    const double c2 = a[k] * a[k] + b[k] * b[k];
    o.deficit += 2.0 * pi * pi * (k2 - 1.0) * c2;
    o.bound += 0.5 * pi * pi * k2 * (k2 - 1.0) * c2;
  }
  return o;
}

}  // namespace

TEST_CASE("profiles reject invalid input") {
  CHECK_THROWS_AS(SupportProfile{sampled(64, [](double t) { return 1.0 + 0.5 * std::cos(2 * t); })},
                  ValidationError);
  CHECK_THROWS_AS(NormProfile{sampled(64, [](double t) { return 1.0 + 0.1 * std::cos(t); })},
                  ValidationError);
  CHECK_THROWS_AS(NormProfile{PeriodicSamples::constant(64, -1.0)}, ValidationError);
  CHECK_THROWS_AS(NormProfile{sampled(64, [](double t) { return 1.0 + 0.4 * std::cos(2 * t); })},
                  ValidationError);
  SupportProfile p(PeriodicSamples::constant(64, 1.0));
  CHECK_THROWS_AS(minkowski_length(p, NormProfile::euclidean(32)), ValidationError);
}

TEST_CASE("circle against the Euclidean norm") {
  const std::size_t n = 128;
  SupportProfile p(PeriodicSamples::constant(n, 2.0));
  const auto h = NormProfile::euclidean(n);
  CHECK(minkowski_length(p, h) == doctest::Approx(4.0 * pi).epsilon(1e-14));
  CHECK(signed_area(curve_from_support(p)) == doctest::Approx(4.0 * pi).epsilon(1e-13));
  CHECK(minkowski_curvature(p, h).max_abs() == doctest::Approx(0.5).epsilon(1e-14));
  const auto r = reverse_iso_report(p, h);
  CHECK(r.passed);
  CHECK(r.equality);
  CHECK(std::abs(r.lhs) < 1e-12);
  CHECK(std::abs(r.evolute_area) < 1e-12);
}

TEST_CASE("worked example: quadratic mode against the Euclidean norm") {
  const std::size_t n = 128;
  SupportProfile p(sampled(n, [](double t) { return 1.0 + 0.1 * std::cos(2 * t); }));
  const auto h = NormProfile::euclidean(n);
  const auto r = reverse_iso_report(p, h);
  CHECK(r.length == doctest::Approx(2.0 * pi).epsilon(1e-13));
  CHECK(r.area == doctest::Approx(0.985 * pi).epsilon(1e-13));
  CHECK(r.iso_area == doctest::Approx(pi).epsilon(1e-13));
  CHECK(r.evolute_area == doctest::Approx(-0.06 * pi).epsilon(1e-12));
  CHECK(r.lhs == doctest::Approx(0.06 * pi * pi).epsilon(1e-11));
  CHECK(r.rhs == doctest::Approx(0.24 * pi * pi).epsilon(1e-11));
  CHECK(r.passed);
  CHECK_FALSE(r.equality);

  const auto e = hurwitz_report(p);
  CHECK(e.lhs == doctest::Approx(0.06 * pi * pi).epsilon(1e-12));
  CHECK(e.rhs == doctest::Approx(0.06 * pi * pi).epsilon(1e-12));
  CHECK(e.equality);
  CHECK(e.get("high_mode_energy") < 1e-28);
}

TEST_CASE("worked example: cubic mode is strict in the Euclidean bound") {
  const std::size_t n = 128;
  SupportProfile p(sampled(n, [](double t) { return 1.0 + 0.05 * std::cos(3 * t); }));
  const auto e = hurwitz_report(p);
  CHECK(e.lhs == doctest::Approx(0.04 * pi * pi).epsilon(1e-12));
  CHECK(e.rhs == doctest::Approx(0.09 * pi * pi).epsilon(1e-12));
  CHECK(e.passed);
  CHECK_FALSE(e.equality);
  CHECK(e.get("high_mode_energy") == doctest::Approx(0.0025).epsilon(1e-12));
  CHECK(curve_from_support(p).immersed);
  CHECK_FALSE(minkowski_evolute(p, NormProfile::euclidean(n)).immersed);
}

TEST_CASE("worked example: anisotropic norm") {
  const std::size_t n = 128;
  const NormProfile h(sampled(n, [](double t) { return 1.0 + 0.2 * std::cos(2 * t); }));
  SupportProfile circle(PeriodicSamples::constant(n, 1.0));
  const auto kappa = minkowski_curvature(circle, h);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = PeriodicSamples::node(j, n);
    CHECK(std::abs(kappa[j] - (1.0 - 0.6 * std::cos(2 * t))) < 1e-12);
  }
  CHECK(signed_area(isoperimetrix(h)) == doctest::Approx(0.94 * pi).epsilon(1e-13));
  const auto tc = total_curvature_identity(circle, h);
  CHECK(tc.passed);
  CHECK(tc.lhs == doctest::Approx(1.88 * pi).epsilon(1e-12));
  const auto r = reverse_iso_report(circle, h);
  CHECK(r.iso_area == doctest::Approx(0.94 * pi).epsilon(1e-13));
  CHECK(r.passed);
  CHECK(r.lhs > 0.0);
}

TEST_CASE("isoperimetrix support function equals the norm profile") {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const auto h = random_norm(rng, 128);
    const auto q = isoperimetrix_support(h);
    for (std::size_t j = 0; j < 128; ++j) CHECK(std::abs(q[j] - h.h()[j]) < 1e-9);
  }
}

TEST_CASE("Minkowski curvature matches a finite-difference oracle") {
  // Independently of the closed form: N_θ = -κ γ_θ along the curve.
  auto p_fn = [](double t) { return 1.0 + 0.08 * std::cos(3 * t) - 0.04 * std::sin(2 * t); };
  auto h_fn = [](double t) { return 1.0 + 0.15 * std::cos(2 * t) + 0.03 * std::sin(4 * t); };
  auto gamma = [&](double t) {
    const double d = 1e-4;
    const double dp = (p_fn(t + d) - p_fn(t - d)) / (2 * d);
    return Eigen::Vector2d(p_fn(t) * std::cos(t) - dp * std::sin(t),
                           p_fn(t) * std::sin(t) + dp * std::cos(t));
  };
  auto normal = [&](double t) {
    const double d = 1e-4;
    const double dh = (h_fn(t + d) - h_fn(t - d)) / (2 * d);
    const Eigen::Vector2d tau(-std::sin(t), std::cos(t));
    const Eigen::Vector2d nn(-std::cos(t), -std::sin(t));
    return Eigen::Vector2d(-dh * tau + h_fn(t) * nn);
  };
  const std::size_t n = 256;
  const auto kappa =
      minkowski_curvature(SupportProfile(sampled(n, p_fn)), NormProfile(sampled(n, h_fn)));
  for (std::size_t j = 0; j < n; j += 7) {
    const double t = PeriodicSamples::node(j, n);
    const auto gt = fd6(gamma, t, 1e-2);
    const auto nt = fd6(normal, t, 1e-2);
    const double oracle = -nt.dot(gt) / gt.dot(gt);
    CHECK(kappa[j] == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("normal graph area") {
  // 1/κ is not band limited; 512 nodes resolve it below the tolerance.
  const std::size_t n = 512;
  SupportProfile circle(PeriodicSamples::constant(n, 1.0));
  const auto h = NormProfile::euclidean(n);
  // A parallel circle of radius 1 - c.
  const auto r = normal_graph_area(circle, h, PeriodicSamples::constant(n, 0.3));
  CHECK(r.passed);
  CHECK(r.lhs == doctest::Approx(pi * 0.49).epsilon(1e-13));

  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_support(rng, n);
    const auto hh = random_norm(rng, n);
    const auto phi = random_offset(rng, n);
    const auto g = normal_graph_area(p, hh, phi);
    CHECK(g.passed);
    CHECK(g.get("bound_margin") >= 0.0);
    // φ = κ⁻¹ lands on the evolute, where the lower bound is attained.
    const auto kappa = minkowski_curvature(p, hh);
    const auto e = normal_graph_area(p, hh, PeriodicSamples::constant(n, 1.0) / kappa);
    CHECK(e.passed);
    CHECK(e.get("bound_equality") == 1.0);
    CHECK(e.lhs == doctest::Approx(signed_area(minkowski_evolute(p, hh))).epsilon(1e-10));
  }
}

TEST_CASE("Euclidean reports agree with the Fourier oracle") {
  Rng rng(7);
  const std::size_t n = 128;
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_support(rng, n, 6, 0.15);
    const auto c = FourierCoefficients::analyze(p.p());
    std::vector<double> a{c.a0}, b{0.0};
    a.insert(a.end(), c.cos.begin(), c.cos.end());
    b.insert(b.end(), c.sin.begin(), c.sin.end());
    const auto o = euclidean_oracle(a, b);
    const auto e = hurwitz_report(p);
    CHECK(e.passed);
    CHECK(e.lhs == doctest::Approx(o.deficit).epsilon(1e-10));
    CHECK(e.rhs == doctest::Approx(o.bound).epsilon(1e-10));
    // The Euclidean norm turns the anisotropic bound into four times this one.
    const auto r = reverse_iso_report(p, NormProfile::euclidean(n));
    CHECK(r.rhs == doctest::Approx(4.0 * e.rhs).epsilon(1e-12));
    CHECK(r.lhs == doctest::Approx(e.lhs).epsilon(1e-9));
  }
}

TEST_CASE("quadratic family attains the Euclidean bound") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto e = hurwitz_report(random_quadratic_support(rng, 64));
    CHECK(e.passed);
    CHECK(e.equality);
    CHECK(e.get("high_mode_energy") < 1e-26);
  }
}

TEST_CASE("random curves and norms satisfy the reverse inequality") {
  Rng rng(2024);
  const std::size_t n = 256;
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_support(rng, n);
    const auto h = random_norm(rng, n);
    const auto r = reverse_iso_report(p, h);
    INFO("trial " << trial);
    CHECK(r.passed);
    CHECK(r.lhs >= -1e-10 * r.scale);
    CHECK(r.evolute_area <= 0.0);
    CHECK(r.lhs <= r.rhs);
    CHECK(r.ratio >= 1.0 - 1e-12);
    CHECK(total_curvature_identity(p, h).passed);
  }
}

TEST_CASE("homothetic isoperimetrix is the equality case") {
  const std::size_t n = 128;
  Rng rng(19);
  for (int trial = 0; trial < 5; ++trial) {
    const auto h = random_norm(rng, n);
    const double lambda = rng.uniform(0.5, 3.0);
    SupportProfile p(lambda * isoperimetrix_support(h));
    const auto r = reverse_iso_report(p, h);
    CHECK(r.passed);
    CHECK(r.equality);
    CHECK(std::abs(r.ratio - 1.0) < 1e-8);
    CHECK(std::abs(r.evolute_area) < 1e-8);
  }
}

TEST_CASE("translation and scaling") {
  const std::size_t n = 128;
  Rng rng(23);
  const auto p = random_support(rng, n);
  const auto h = random_norm(rng, n);
  const auto base = reverse_iso_report(p, h);
  const auto shifted = reverse_iso_report(
      SupportProfile(p.p() + sampled(n, [](double t) { return 0.7 * std::cos(t) - 0.2 * std::sin(t); })),
      h);
  CHECK(shifted.lhs == doctest::Approx(base.lhs).epsilon(1e-10));
  CHECK(shifted.rhs == doctest::Approx(base.rhs).epsilon(1e-10));
  CHECK(shifted.area == doctest::Approx(base.area).epsilon(1e-12));

  const double s = 2.5;
  const auto scaled = reverse_iso_report(SupportProfile(s * p.p()), h);
  CHECK(scaled.lhs == doctest::Approx(s * s * base.lhs).epsilon(1e-10));
  CHECK(scaled.rhs == doctest::Approx(s * s * base.rhs).epsilon(1e-10));
  CHECK(scaled.ratio == doctest::Approx(base.ratio).epsilon(1e-12));
  CHECK(scaled.passed == base.passed);
  CHECK(scaled.equality == base.equality);
}
