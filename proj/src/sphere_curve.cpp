#include "isogauge/sphere_curve.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "isogauge/error.hpp"

namespace isogauge {
namespace {

constexpr double pi = std::numbers::pi;

// Arcs further apart along the curve than this many local spacings must not
// come closer than one spacing.
constexpr double kSimplicityWindow = 3.0;

void check_simple(const std::vector<Eigen::Vector3d>& p) {
  const std::size_t n = p.size();
  std::vector<double> step(n), along(n + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    step[j] = (p[(j + 1) % n] - p[j]).norm();
    along[j + 1] = along[j] + step[j];
  }
  if (along[n] <= 0.0) throw ValidationError("spherical curve has zero length");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(step[i] > 0.0)) throw ValidationError("repeated sample at node " + std::to_string(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double forward = along[j] - along[i];
      const double arc = std::min(forward, along[n] - forward);
      const double local = std::max(step[i], step[j]);
      if (arc < kSimplicityWindow * local) continue;
      if ((p[i] - p[j]).norm() < local) {
        throw ValidationError("curve is not simple near nodes " + std::to_string(i) + " and " +
                              std::to_string(j));
      }
    }
  }
}

double kahan_sum(const std::vector<double>& v) {
  double s = 0.0, c = 0.0;
  for (double x : v) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

}  // namespace

SphericalCurve::SphericalCurve(std::vector<Eigen::Vector3d> points) : points_(std::move(points)) {
  const std::size_t n = points_.size();
  if (n < 8 || n % 2 != 0) {
    throw ValidationError("spherical curve needs an even sample count >= 8, got " +
                          std::to_string(n));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!points_[j].allFinite() || std::abs(points_[j].norm() - 1.0) > 1e-12) {
      throw ValidationError("sample " + std::to_string(j) + " is not a unit vector");
    }
  }
  check_simple(points_);
}

PeriodicSamples SphericalCurve::component(int axis) const {
  std::vector<double> v(points_.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = points_[j][axis];
  return PeriodicSamples(std::move(v));
}

CurveFrame frame_and_curvature(const SphericalCurve& curve) {
  const std::size_t n = curve.size();
  std::vector<Eigen::Vector3d> d1(n), d2(n);
  for (int axis = 0; axis < 3; ++axis) {
    const auto c = curve.component(axis);
    const auto c1 = periodic_derivative(c, 1);
    const auto c2 = periodic_derivative(c, 2);
    for (std::size_t j = 0; j < n; ++j) {
      d1[j][axis] = c1[j];
      d2[j][axis] = c2[j];
    }
  }
  CurveFrame f;
  f.gamma = curve.points();
  f.t.resize(n);
  f.eta.resize(n);
  f.ds.resize(n);
  std::vector<double> speed(n), kg(n);
  const double du = 2.0 * pi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& g = f.gamma[j];
    const double v = d1[j].norm();
    speed[j] = v;
    f.ds[j] = v * du;
    f.t[j] = d1[j] / v;
    f.eta[j] = g.cross(f.t[j]);
    kg[j] = g.dot(d1[j].cross(d2[j])) / (v * v * v);
  }
  f.speed = PeriodicSamples(std::move(speed));
  f.kg = PeriodicSamples(std::move(kg));
  f.kg_s = periodic_derivative(f.kg, 1) / f.speed;

  const double length = kahan_sum(f.ds);
  const double floor = 1e-8 * 2.0 * pi / length;
  for (std::size_t j = 0; j < n; ++j) {
    if (!(f.kg[j] > floor)) {
      throw ValidationError("curve is not strictly convex: k_g = " + std::to_string(f.kg[j]) +
                            " at node " + std::to_string(j));
    }
  }
  return f;
}

CurveMeasures length_area(const CurveFrame& frame) {
  const std::size_t n = frame.size();
  std::vector<double> kds(n), jds(n);
  for (std::size_t j = 0; j < n; ++j) {
    kds[j] = frame.kg[j] * frame.ds[j];
    jds[j] = std::hypot(1.0, frame.kg[j]) * frame.ds[j];
  }
  CurveMeasures m;
  m.length = kahan_sum(frame.ds);
  m.total_curvature = kahan_sum(kds);
  m.elastic = kahan_sum(jds);
  m.area = 2.0 * pi - m.total_curvature;
  if (!(m.area > 0.0 && m.area < 2.0 * pi)) {
    throw ValidationError("enclosed area " + std::to_string(m.area) +
                          " outside (0, 2π): check orientation and convexity");
  }
  return m;
}

double remainder_functional(const CurveFrame& frame) {
  const std::size_t n = frame.size();
  std::vector<double> root(n), rows(n);
  for (std::size_t j = 0; j < n; ++j) root[j] = std::hypot(1.0, frame.kg[j]);
  std::vector<double> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ki = frame.kg[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double kj = frame.kg[j];
      const double diff = ki - kj;
      row[j] = diff * diff / (root[i] * root[j] + 1.0 + ki * kj) * frame.ds[j];
    }
    rows[i] = kahan_sum(row) * frame.ds[i];
  }
  return kahan_sum(rows);
}

namespace {

// Largest k_g of the band-limited interpolant: each nodal peak is refined by
// bisection on the derivative between its neighbours.
double peak_curvature(const PeriodicSamples& kg) {
  const std::size_t n = kg.size();
  const auto coeffs = FourierCoefficients::analyze(kg);
  double best = kg.max();
  for (std::size_t j = 0; j < n; ++j) {
    const double here = kg[j];
    if (here < kg[(j + n - 1) % n] || here < kg[(j + 1) % n]) continue;
    double lo = PeriodicSamples::node(j, n) - 2.0 * pi / n;
    double hi = lo + 4.0 * pi / n;
    if (coeffs.evaluate(lo, 1) < 0.0 || coeffs.evaluate(hi, 1) > 0.0) continue;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (coeffs.evaluate(mid, 1) > 0.0 ? lo : hi) = mid;
    }
    best = std::max(best, coeffs.evaluate(0.5 * (lo + hi)));
  }
  return best;
}

}  // namespace

SphereCurveReport reverse_iso_identity_report(const SphericalCurve& curve, double tolerance) {
  const auto frame = frame_and_curvature(curve);
  const auto m = length_area(frame);
  const double remainder = remainder_functional(frame);
  const std::size_t n = frame.size();

  const double kbar = m.total_curvature / m.length;
  std::vector<double> dev(n), one_plus(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double d = frame.kg[j] - kbar;
    dev[j] = d * d * frame.ds[j];
    one_plus[j] = (1.0 + frame.kg[j] * frame.kg[j]) * frame.ds[j];
  }
  const double kmax = peak_curvature(frame.kg);
  const double variance_integral = kahan_sum(dev);
  const double variance_ratio = variance_integral / kahan_sum(one_plus);

  SphereCurveReport r;
  r.check = "sphere_curve_identity";
  r.relation = Relation::Inequality;
  r.resolution = n;
  r.tolerance = tolerance;
  r.length = m.length;
  r.area = m.area;
  r.total_curvature = m.total_curvature;
  r.elastic = m.elastic;
  r.remainder = remainder;
  r.oscillation_bound = m.length / (1.0 + kmax * kmax) * variance_integral;

  const double lhs = m.length * m.length - m.area * (4.0 * pi - m.area);
  const double rhs = m.elastic * m.elastic - 4.0 * pi * pi;
  const double scale = std::max(m.length * m.length, 4.0 * pi * pi);
  const double residual = lhs - (rhs - remainder);
  const double cross = m.elastic * m.elastic - m.length * m.length -
                       m.total_curvature * m.total_curvature;

  r.add("L", m.length);
  r.add("A", m.area);
  r.add("K", m.total_curvature);
  r.add("J", m.elastic);
  r.add("R", remainder);
  r.add("R_single_integral", cross);
  r.add("identity_residual", residual);
  r.add("oscillation_bound", r.oscillation_bound);
  r.add("kg_variance_ratio", variance_ratio);

  r.require(std::abs(residual) <= tolerance * scale, "identity residual exceeds tolerance");
  r.require(remainder >= -1e-12 * scale, "negative remainder");
  r.require(lhs >= -tolerance * scale, "space-form isoperimetric inequality violated");
  r.require(rhs - lhs >= r.oscillation_bound - tolerance * scale,
            "remainder below the oscillation bound");
  r.settle(lhs, rhs, scale);
  r.equality = variance_ratio < 1e-10;
  if (!r.passed) {
    for (const auto& [name, value] : r.functionals) {
      r.diagnostics.push_back(name + " = " + std::to_string(value));
    }
  }
  return r;
}

SphericalEvolute spherical_evolute(const CurveFrame& frame) {
  const std::size_t n = frame.size();
  SphericalEvolute e;
  e.points.resize(n);
  std::vector<double> speed(n);
  double kmax = 0.0, dmax = 0.0, length = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double k = frame.kg[j];
    e.points[j] = (k * frame.gamma[j] + frame.eta[j]) / std::hypot(1.0, k);
    speed[j] = std::abs(frame.kg_s[j]) / (1.0 + k * k);
    kmax = std::max(kmax, std::abs(k));
    dmax = std::max(dmax, std::abs(frame.kg_s[j]));
    length += frame.ds[j];
  }
  e.speed = PeriodicSamples(std::move(speed));

  // Below this level k_g' is rounding noise (constant curvature).
  const double floor = 1e-9 * (1.0 + kmax) * 2.0 * pi / length;
  if (dmax <= floor) return e;

  const auto coeffs = FourierCoefficients::analyze(frame.kg);
  auto slope = [&](double u) { return coeffs.evaluate(u, 1); };
  auto sign_at = [&](std::size_t j) {
    const double v = frame.kg_s[j];
    return std::abs(v) <= floor ? 0 : (v > 0 ? 1 : -1);
  };
  // Walk the nodes, pairing each nonzero sign with the next nonzero one.
  std::size_t start = 0;
  while (sign_at(start) == 0) ++start;
  std::size_t prev = start;
  for (std::size_t step = 1; step <= n; ++step) {
    const std::size_t j = (start + step) % n;
    const int s = sign_at(j);
    if (s == 0) continue;
    if (s != sign_at(prev)) {
      double lo = PeriodicSamples::node(prev, n);
      double hi = PeriodicSamples::node(j, n);
      if (hi <= lo) hi += 2.0 * pi;
      const double flo = slope(lo);
      for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((slope(mid) > 0) == (flo > 0)) lo = mid; else hi = mid;
      }
      e.cusps.push_back(std::fmod(0.5 * (lo + hi), 2.0 * pi));
    }
    prev = j;
  }
  std::sort(e.cusps.begin(), e.cusps.end());
  return e;
}

SphericalCurve gnomonic_lift(const PlanarFront& planar, double height) {
  if (!(height > 0.0) || !std::isfinite(height)) {
    throw ValidationError("gnomonic plane height must be positive");
  }
  const double limit = height * std::tan(0.45 * pi);
  double spread = 0.0;
  for (const auto& q : planar.points) {
    if (!q.allFinite() || q.norm() >= limit) {
      throw ValidationError("planar curve leaves the gnomonic hemisphere bound");
    }
    spread = std::max(spread, (q - planar.points.front()).norm());
  }
  if (!(spread > 0.0)) throw ValidationError("planar input is a point, not a curve");
  std::vector<Eigen::Vector3d> pts(planar.size());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    pts[j] = Eigen::Vector3d(planar.points[j].x(), planar.points[j].y(), height).normalized();
  }
  return SphericalCurve(std::move(pts));
}

}  // namespace isogauge
