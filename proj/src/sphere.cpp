#include "isogauge/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "fft.hpp"

namespace isogauge {
namespace {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

// Legendre P_n and P_n' at x by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(std::size_t n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (std::size_t k = 2; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
    p0 = p1;
    p1 = p2;
  }
  const double dn = static_cast<double>(n);
  const double dp = dn * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

// Longitudinal spectrum of a field: column m holds the complex Fourier
// coefficient of every row. Mode m of a smooth field is (sin θ)^{m mod 2}
// times a smooth function of cos θ; `flipped` records that an odd number of
// sin θ factors has been applied or removed.
struct Spectrum {
  std::size_t n_theta = 0;
  std::size_t n_modes = 0;
  std::vector<cplx> c;  // [m * n_theta + i]
  bool flipped = false;

  cplx& at(std::size_t m, std::size_t i) { return c[m * n_theta + i]; }
  bool odd(std::size_t m) const { return ((m % 2) == 1) != flipped; }
};

Spectrum to_spectrum(const SphereScalarField& f) {
  const auto& g = f.g();
  Spectrum s;
  s.n_theta = g.n_theta();
  s.n_modes = g.n_phi() / 2 + 1;
  s.c.assign(s.n_theta * s.n_modes, cplx(0.0, 0.0));
  std::vector<cplx> row(s.n_modes);
  for (std::size_t i = 0; i < g.n_theta(); ++i) {
    detail::forward_real(std::span<const double>(f.values().data() + g.index(i, 0), g.n_phi()),
                         row);
    for (std::size_t m = 0; m < s.n_modes; ++m) s.at(m, i) = row[m];
  }
  return s;
}

SphereScalarField from_spectrum(const Spectrum& s, const GridPtr& grid) {
  const auto& g = *grid;
  std::vector<double> values(g.size());
  std::vector<cplx> row(s.n_modes);
  const double inv = 1.0 / static_cast<double>(g.n_phi());
  for (std::size_t i = 0; i < g.n_theta(); ++i) {
    for (std::size_t m = 0; m < s.n_modes; ++m) row[m] = s.c[m * s.n_theta + i];
    std::span<double> out(values.data() + g.index(i, 0), g.n_phi());
    detail::inverse_real(row, out);
    for (double& v : out) v *= inv;
  }
  return SphereScalarField(grid, std::move(values));
}

Spectrum d_phi(const Spectrum& s) {
  Spectrum r = s;
  const std::size_t nyquist = s.n_modes - 1;
  for (std::size_t m = 0; m < s.n_modes; ++m) {
    const cplx factor = m == nyquist ? cplx(0.0, 0.0) : cplx(0.0, static_cast<double>(m));
    for (std::size_t i = 0; i < s.n_theta; ++i) r.at(m, i) *= factor;
  }
  return r;
}

void apply_diff(const SphereGrid& g, const cplx* in, cplx* out) {
  const auto& d = g.diff_matrix();
  const std::size_t n = g.n_theta();
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) acc += d[i * n + k] * in[k];
    out[i] = acc;
  }
}

// ∂_θ = -sin θ d/dx, applied per mode with the parity-aware factorisation:
//   even:  f = P(x)          -> f_θ = -sin θ P'(x)
//   odd:   f = sin θ Q(x)    -> f_θ = x Q - (1 - x²) Q'(x)
Spectrum d_theta(const Spectrum& s, const SphereGrid& g) {
  Spectrum r = s;
  r.flipped = !s.flipped;
  const std::size_t n = s.n_theta;
  std::vector<cplx> q(n), dq(n);
  for (std::size_t m = 0; m < s.n_modes; ++m) {
    const cplx* col = s.c.data() + m * n;
    cplx* out = r.c.data() + m * n;
    if (!s.odd(m)) {
      apply_diff(g, col, dq.data());
      for (std::size_t i = 0; i < n; ++i) out[i] = -g.sin_colatitude(i) * dq[i];
    } else {
      for (std::size_t i = 0; i < n; ++i) q[i] = col[i] / g.sin_colatitude(i);
      apply_diff(g, q.data(), dq.data());
      for (std::size_t i = 0; i < n; ++i) {
        const double x = g.cos_colatitude(i);
        const double s2 = g.sin_colatitude(i) * g.sin_colatitude(i);
        out[i] = x * q[i] - s2 * dq[i];
      }
    }
  }
  return r;
}

// Multiplies (power = 1) or divides (power = -1) every row by sin θ.
Spectrum scale_by_sin(const Spectrum& s, const SphereGrid& g, int power) {
  Spectrum r = s;
  r.flipped = !s.flipped;
  for (std::size_t m = 0; m < s.n_modes; ++m) {
    for (std::size_t i = 0; i < s.n_theta; ++i) {
      const double si = g.sin_colatitude(i);
      r.at(m, i) *= power > 0 ? si : 1.0 / si;
    }
  }
  return r;
}

void require_same_grid(const SphereScalarField& a, const SphereScalarField& b) {
  if (a.grid() != b.grid() &&
      (a.g().n_theta() != b.g().n_theta() || a.g().n_phi() != b.g().n_phi())) {
    throw ValidationError("sphere fields live on different grids");
  }
}

template <class Op>
SphereScalarField zip(const SphereScalarField& a, const SphereScalarField& b, Op op) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = op(a[k], b[k]);
  return SphereScalarField(a.grid(), std::move(v));
}

double pairwise_sum(std::vector<double> buf) {
  if (buf.empty()) return 0.0;
  std::size_t len = buf.size();
  while (len > 1) {
    for (std::size_t i = 0; i < len / 2; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (len % 2 == 1) buf[len / 2] = buf[len - 1];
    len = (len + 1) / 2;
  }
  return buf[0];
}

// Associated Legendre P_l^m(x) without the Condon–Shortley phase.
double associated_legendre(int l, int m, double x) {
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  double pmm = 1.0;
  for (int k = 1; k <= m; ++k) pmm *= (2.0 * k - 1.0) * s;
  if (l == m) return pmm;
  double pm1 = x * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pm1;
  double pl = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pl = ((2.0 * ll - 1.0) * x * pm1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pm1;
    pm1 = pl;
  }
  return pl;
}

}  // namespace

SphereGrid::SphereGrid(std::size_t n_theta, std::size_t n_phi) : n_phi_(n_phi) {
  if (n_theta < 4) throw ValidationError("sphere grid needs n_theta >= 4");
  if (n_phi < 8 || n_phi % 2 != 0) throw ValidationError("sphere grid needs even n_phi >= 8");
  const std::size_t n = n_theta;
  x_.resize(n);
  gl_w_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre_with_derivative(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto [p, dp] = legendre_with_derivative(n, x);
    (void)p;
    x_[i] = x;
    gl_w_[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  s_.resize(n);
  w_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s_[i] = std::sqrt((1.0 - x_[i]) * (1.0 + x_[i]));
    w_[i] = gl_w_[i] * 2.0 * pi / static_cast<double>(n_phi);
  }
  // Barycentric weights of the Gauss–Legendre nodes: (-1)^i sqrt((1-x²) w).
  std::vector<double> lambda(n);
  for (std::size_t i = 0; i < n; ++i) {
    lambda[i] = ((i % 2) ? -1.0 : 1.0) * s_[i] * std::sqrt(gl_w_[i]);
  }
  diff_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double diag = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = (lambda[j] / lambda[i]) / (x_[i] - x_[j]);
      diff_[i * n + j] = d;
      diag -= d;
    }
    diff_[i * n + i] = diag;
  }
}

double SphereGrid::colatitude(std::size_t i) const { return std::acos(x_[i]); }

double SphereGrid::longitude(std::size_t j) const {
  return 2.0 * pi * static_cast<double>(j) / static_cast<double>(n_phi_);
}

Eigen::Vector3d SphereGrid::point(std::size_t i, std::size_t j) const {
  const double phi = longitude(j);
  return {s_[i] * std::cos(phi), s_[i] * std::sin(phi), x_[i]};
}

Eigen::Vector3d SphereGrid::e_theta(std::size_t i, std::size_t j) const {
  const double phi = longitude(j);
  return {x_[i] * std::cos(phi), x_[i] * std::sin(phi), -s_[i]};
}

Eigen::Vector3d SphereGrid::e_phi(std::size_t j) const {
  const double phi = longitude(j);
  return {-std::sin(phi), std::cos(phi), 0.0};
}

SphereScalarField::SphereScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw ValidationError("sphere field without grid");
  if (values_.size() != grid_->size()) {
    throw ValidationError("sphere field has " + std::to_string(values_.size()) +
                          " values for a grid of " + std::to_string(grid_->size()));
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw ValidationError("non-finite sphere field value at node " + std::to_string(k));
    }
  }
}

SphereScalarField SphereScalarField::sample(
    GridPtr grid, const std::function<double(const Eigen::Vector3d&)>& f) {
  std::vector<double> v(grid->size());
  for (std::size_t i = 0; i < grid->n_theta(); ++i) {
    for (std::size_t j = 0; j < grid->n_phi(); ++j) v[grid->index(i, j)] = f(grid->point(i, j));
  }
  return SphereScalarField(std::move(grid), std::move(v));
}

SphereScalarField SphereScalarField::constant(GridPtr grid, double c) {
  const std::size_t n = grid->size();
  return SphereScalarField(std::move(grid), std::vector<double>(n, c));
}

double SphereScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double SphereScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double SphereScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

SphereScalarField operator+(const SphereScalarField& a, const SphereScalarField& b) {
  return zip(a, b, [](double x, double y) { return x + y; });
}
SphereScalarField operator-(const SphereScalarField& a, const SphereScalarField& b) {
  return zip(a, b, [](double x, double y) { return x - y; });
}
SphereScalarField operator*(const SphereScalarField& a, const SphereScalarField& b) {
  return zip(a, b, [](double x, double y) { return x * y; });
}
SphereScalarField operator*(double s, const SphereScalarField& a) {
  return a.map([s](double x) { return s * x; });
}
SphereScalarField operator+(double s, const SphereScalarField& a) {
  return a.map([s](double x) { return s + x; });
}

CoordinateDerivatives coordinate_derivatives(const SphereScalarField& f) {
  const auto& g = f.g();
  const auto spec = to_spectrum(f);
  return {from_spectrum(d_theta(spec, g), f.grid()), from_spectrum(d_phi(spec), f.grid())};
}

SphereDerivatives sphere_operators(const SphereScalarField& h) {
  const auto& grid = h.grid();
  const auto& g = *grid;
  const auto spec = to_spectrum(h);
  const auto spec_t = d_theta(spec, g);
  const auto spec_p = d_phi(spec);
  const auto f_t = from_spectrum(spec_t, grid);
  const auto f_p = from_spectrum(spec_p, grid);
  const auto f_tt = from_spectrum(d_theta(spec_t, g), grid);
  const auto f_tp = from_spectrum(d_theta(spec_p, g), grid);
  const auto f_pp = from_spectrum(d_phi(spec_p), grid);
  // Δf = (sin θ)^{-1} ∂_θ(sin θ ∂_θ f) + (sin θ)^{-2} ∂_φφ f.
  const auto div_t =
      from_spectrum(scale_by_sin(d_theta(scale_by_sin(spec_t, g, 1), g), g, -1), grid);

  const std::size_t size = g.size();
  std::vector<double> gt(size), gp(size), htt(size), htp(size), hpp(size), lap(size);
  for (std::size_t i = 0; i < g.n_theta(); ++i) {
    const double s = g.sin_colatitude(i);
    const double cot = g.cos_colatitude(i) / s;
    for (std::size_t j = 0; j < g.n_phi(); ++j) {
      const std::size_t k = g.index(i, j);
      gt[k] = f_t[k];
      gp[k] = f_p[k] / s;
      htt[k] = f_tt[k];
      htp[k] = (f_tp[k] - cot * f_p[k]) / s;
      hpp[k] = f_pp[k] / (s * s) + cot * f_t[k];
      lap[k] = div_t[k] + f_pp[k] / (s * s);
    }
  }
  return {SphereScalarField(grid, std::move(gt)),  SphereScalarField(grid, std::move(gp)),
          SphereScalarField(grid, std::move(htt)), SphereScalarField(grid, std::move(htp)),
          SphereScalarField(grid, std::move(hpp)), SphereScalarField(grid, std::move(lap))};
}

double sphere_integral(const SphereScalarField& f) {
  const auto& g = f.g();
  std::vector<double> rows(g.n_theta());
  std::vector<double> row(g.n_phi());
  for (std::size_t i = 0; i < g.n_theta(); ++i) {
    for (std::size_t j = 0; j < g.n_phi(); ++j) row[j] = f.at(i, j);
    rows[i] = g.weight(i) * pairwise_sum(row);
  }
  return pairwise_sum(std::move(rows));
}

double real_spherical_harmonic(int l, int m, double cos_theta, double phi) {
  if (l < 0 || std::abs(m) > l) {
    throw ValidationError("invalid harmonic degree/order (" + std::to_string(l) + ", " +
                          std::to_string(m) + ")");
  }
  const int am = std::abs(m);
  double ratio = 1.0;  // (l - |m|)! / (l + |m|)!
  for (int k = l - am + 1; k <= l + am; ++k) ratio /= k;
  const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * pi) * ratio);
  const double p = associated_legendre(l, am, cos_theta);
  if (m == 0) return norm * p;
  const double azimuth = m > 0 ? std::cos(am * phi) : std::sin(am * phi);
  return std::numbers::sqrt2 * norm * p * azimuth;
}

double real_spherical_harmonic(int l, int m, const Eigen::Vector3d& z) {
  return real_spherical_harmonic(l, m, std::clamp(z.z(), -1.0, 1.0), std::atan2(z.y(), z.x()));
}

SphereScalarField harmonic_field(const GridPtr& grid, int l, int m) {
  std::vector<double> v(grid->size());
  for (std::size_t i = 0; i < grid->n_theta(); ++i) {
    for (std::size_t j = 0; j < grid->n_phi(); ++j) {
      v[grid->index(i, j)] =
          real_spherical_harmonic(l, m, grid->cos_colatitude(i), grid->longitude(j));
    }
  }
  return SphereScalarField(grid, std::move(v));
}

double harmonic_coefficient(const SphereScalarField& f, int l, int m) {
  return sphere_integral(f * harmonic_field(f.grid(), l, m));
}

InequalityReport poincare_gap_check(const SphereScalarField& f, double tolerance) {
  const double mean = sphere_integral(f) / (4.0 * pi);
  const auto u = f.map([mean](double v) { return v - mean; });
  const auto d = sphere_operators(u);
  const double grad2 = sphere_integral(d.grad_theta * d.grad_theta + d.grad_phi * d.grad_phi);
  const double l2 = sphere_integral(u * u);
  const double lap2 = sphere_integral(d.laplacian * d.laplacian);
  const double n = 2.0;
  const double middle = grad2 / n - l2;
  const double upper = (lap2 / n - grad2) / (2.0 * (n + 1.0));

  InequalityReport r;
  r.check = "poincare_gap";
  r.relation = Relation::Inequality;
  r.resolution = f.g().n_theta();
  r.tolerance = tolerance;
  r.add("dimension", n);
  r.add("mean", mean);
  r.add("l2", l2);
  r.add("grad_l2", grad2);
  r.add("laplacian_l2", lap2);
  r.add("lower", 0.0);
  r.add("middle", middle);
  r.add("upper", upper);
  const double scale = grad2 / n + l2 + 1e-24 * (1.0 + f.max_abs() * f.max_abs());
  r.require(middle >= -tolerance * scale, "lower bound violated: middle < 0");
  r.settle(middle, upper, scale);
  return r;
}

InequalityReport poincare_gap_check(const PeriodicSamples& f, double tolerance) {
  const double mean = periodic_integral(f) / (2.0 * pi);
  const auto u = f.map([mean](double v) { return v - mean; });
  const auto d1 = periodic_derivative(u, 1);
  const auto d2 = periodic_derivative(u, 2);
  const double grad2 = periodic_integral(d1 * d1);
  const double l2 = periodic_integral(u * u);
  const double lap2 = periodic_integral(d2 * d2);
  const double n = 1.0;
  const double middle = grad2 / n - l2;
  const double upper = (lap2 / n - grad2) / (2.0 * (n + 1.0));

  InequalityReport r;
  r.check = "poincare_gap";
  r.relation = Relation::Inequality;
  r.resolution = f.size();
  r.tolerance = tolerance;
  r.add("dimension", n);
  r.add("mean", mean);
  r.add("l2", l2);
  r.add("grad_l2", grad2);
  r.add("laplacian_l2", lap2);
  r.add("lower", 0.0);
  r.add("middle", middle);
  r.add("upper", upper);
  const double scale = grad2 / n + l2 + 1e-24 * (1.0 + f.max_abs() * f.max_abs());
  r.require(middle >= -tolerance * scale, "lower bound violated: middle < 0");
  r.settle(middle, upper, scale);
  return r;
}

}  // namespace isogauge
