#include <doctest.h>

#include <cmath>
#include <limits>

#include "isogauge/search.hpp"

using namespace isogauge;

namespace {

FourierCoefficients norm_series(double c2) {
  FourierCoefficients c;
  c.a0 = 1.0;
  c.cos = {0.0, c2};
  c.sin = {0.0, 0.0};
  return c;
}

SearchSpace euclidean_space() {
  SearchSpace s;
  s.normalization = Normalization::Euclidean;
  s.curve_degree = 4;
  return s;
}

SearchSpace fixed_space(double c2) {
  SearchSpace s;
  s.curve_degree = 4;
  s.fixed_norm = norm_series(c2);
  return s;
}

}  // namespace

TEST_CASE("space dimensions") {
  auto s = euclidean_space();
  CHECK(s.dimension() == 6);
  s.norm_degree = 4;
  CHECK(s.dimension() == 6);
  SearchSpace a;
  a.curve_degree = 3;
  a.norm_degree = 5;
  CHECK(a.curve_dimension() == 4);
  CHECK(a.norm_dimension() == 4);
  a.fixed_norm = norm_series(0.1);
  CHECK(a.dimension() == 4);
}

TEST_CASE("objective examples") {
  const std::vector<double> x{0.1, 0.0, 0.0, 0.0, 0.0, 0.0};
  CHECK(sharpness_objective(euclidean_space(), x, 128) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sharpness_objective(fixed_space(0.0), x, 128) == doctest::Approx(0.25).epsilon(1e-12));
  // A cubic mode gives the Fourier ratio 4·8/(9·8) = 4/9.
  const std::vector<double> cubic{0.0, 0.0, 0.05, 0.0, 0.0, 0.0};
  CHECK(sharpness_objective(euclidean_space(), cubic, 128) == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
  // p equal to the norm profile is homothetic to the isoperimetrix.
  const std::vector<double> iso{0.2, 0.0, 0.0, 0.0, 0.0, 0.0};
  CHECK(std::abs(sharpness_objective(fixed_space(0.2), iso, 128)) < 1e-10);
  // p ≡ 1 is the Euclidean equality case.
  CHECK(sharpness_objective(euclidean_space(), std::vector<double>(6, 0.0), 128) == 0.0);

  const double ninf = -std::numeric_limits<double>::infinity();
  CHECK(sharpness_objective(euclidean_space(), {0.4, 0.0, 0.0, 0.0, 0.0, 0.0}, 128) == ninf);
  CHECK(sharpness_objective(euclidean_space(), {0.6, 0.0, 0.0, 0.0, 0.0, 0.0}, 128) == ninf);
  CHECK(sharpness_objective(euclidean_space(), {0.1}, 128) == ninf);
}

TEST_CASE("objective is invariant under scaling of the curve") {
  auto s = fixed_space(0.15);
  const std::vector<double> x{0.03, -0.02, 0.01, 0.004, -0.003, 0.002};
  const auto [p, h] = realize(s, x, 256);
  const auto base = reverse_iso_report(p, h);
  const auto scaled = reverse_iso_report(SupportProfile(3.7 * p.p()), h);
  CHECK(scaled.lhs / scaled.rhs == doctest::Approx(base.lhs / base.rhs).epsilon(1e-10));
  CHECK(base.lhs / base.rhs == doctest::Approx(sharpness_objective(s, x, 256)).epsilon(1e-14));
}

TEST_CASE("Euclidean search recovers the sharp constant") {
  const auto r = maximize(euclidean_space(), 2000, 1);
  CHECK(r.feasible);
  CHECK(r.objective >= 0.999);
  CHECK(r.objective <= 1.0 + 1e-9);
  CHECK(r.evaluations <= 2000);
  CHECK(r.trace.size() == r.evaluations);
  for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] >= r.trace[i - 1]);
  CHECK(r.trace.back() == r.objective);
  CHECK(r.recertified);
  CHECK(r.recertified_resolution == 2 * r.resolution);
}

TEST_CASE("search is deterministic in the seed and independent of threads") {
  const auto a = maximize(fixed_space(0.2), 600, 42, 1);
  const auto b = maximize(fixed_space(0.2), 600, 42, 3);
  CHECK(a.objective == b.objective);
  CHECK(a.point == b.point);
  CHECK(a.trace == b.trace);
  const auto c = maximize(fixed_space(0.2), 600, 43, 1);
  CHECK(c.trace != a.trace);
}

TEST_CASE("anisotropic search stays below the theorem ceiling") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto r = maximize(fixed_space(0.2), 2000, seed);
    CHECK(r.feasible);
    CHECK(r.recertified);
    CHECK(r.objective > 0.0);
    for (double v : r.trace) CHECK(v <= 1.0 + 1e-9);
  }
  SearchSpace free;
  free.curve_degree = 4;
  free.norm_degree = 4;
  const auto r = maximize(free, 2000, 9);
  CHECK(r.recertified);
  CHECK(r.objective <= 1.0 + 1e-9);
}

TEST_CASE("degenerate and infeasible spaces") {
  auto trivial = euclidean_space();
  trivial.curve_degree = 1;
  const auto r = maximize(trivial, 50, 0);
  CHECK(r.feasible);
  CHECK(r.objective == 0.0);
  CHECK(r.evaluations == 1);

  CHECK_THROWS_AS(maximize(euclidean_space(), 49, 0), ValidationError);

  const auto bad = maximize(fixed_space(0.5), 100, 0);
  CHECK_FALSE(bad.feasible);
  CHECK(bad.evaluations > 0);
}
