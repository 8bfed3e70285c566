#include "isogauge/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "isogauge/error.hpp"
#include "isogauge/random.hpp"

namespace isogauge {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kMinBudget = 50;

PeriodicSamples series(std::size_t n, const std::vector<double>& x, std::size_t offset,
                       int first, int last, int stride) {
  return PeriodicSamples::sample(n, [&](double t) {
    double v = 1.0;
    std::size_t i = offset;
    for (int k = first; k <= last; k += stride, i += 2) {
      v += x[i] * std::cos(k * t) + x[i + 1] * std::sin(k * t);
    }
    return v;
  });
}

// min / max of 1 + Σ (1 - k²)(x cos kθ + y sin kθ) on a fixed dense grid.
double radius_ratio(const std::vector<double>& x, std::size_t offset, int first, int last,
                    int stride) {
  constexpr int kDense = 2048;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int j = 0; j < kDense; ++j) {
    const double t = 2.0 * std::numbers::pi * j / kDense;
    double v = 1.0;
    std::size_t i = offset;
    for (int k = first; k <= last; k += stride, i += 2) {
      v += (1.0 - k * k) * (x[i] * std::cos(k * t) + x[i + 1] * std::sin(k * t));
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi > 0.0 ? lo / hi : -1.0;
}

// Mode of coordinate i, for start-point and simplex scaling.
int mode_of(const SearchSpace& s, std::size_t i) {
  if (i < s.curve_dimension()) return 2 + static_cast<int>(i / 2);
  return 2 + 2 * static_cast<int>((i - s.curve_dimension()) / 2);
}

struct Restart {
  std::vector<double> best;
  double value = kNegInf;
  std::vector<double> history;  // raw objective per evaluation
};

Restart nelder_mead(const SearchSpace& space, std::size_t budget, std::uint64_t seed) {
  const std::size_t d = space.dimension();
  Rng rng(seed);
  Restart out;
  auto eval = [&](const std::vector<double>& x) {
    const double v = sharpness_objective(space, x, space.resolution);
    out.history.push_back(v);
    if (v > out.value) {
      out.value = v;
      out.best = x;
    }
    return v;
  };

  std::vector<double> start(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double k = mode_of(space, i);
    start[i] = rng.uniform(-1.0, 1.0) * space.bound / (k * k);
  }
  std::vector<std::vector<double>> simplex{start};
  std::vector<double> f{eval(start)};
  for (std::size_t i = 0; i < d && out.history.size() < budget; ++i) {
    auto x = start;
    const double k = mode_of(space, i);
    x[i] += (x[i] > 0 ? -0.5 : 0.5) * space.bound / (k * k);
    simplex.push_back(x);
    f.push_back(eval(x));
  }
  if (simplex.size() < d + 1) return out;

  std::vector<std::size_t> order(d + 1);
  while (out.history.size() < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return f[a] > f[b];
    });
    const std::size_t best = order.front(), worst = order.back(), second = order[d - 1];
    if (std::isfinite(f[best]) && std::isfinite(f[worst]) &&
        f[best] - f[worst] <= 1e-15 * (1.0 + std::abs(f[best]))) {
      double size = 0.0;
      for (std::size_t v = 0; v <= d; ++v) {
        for (std::size_t i = 0; i < d; ++i) size = std::max(size, std::abs(simplex[v][i] - simplex[best][i]));
      }
      if (size < 1e-12) break;
    }
    std::vector<double> centroid(d, 0.0);
    for (std::size_t v = 0; v <= d; ++v) {
      if (v == worst) continue;
      for (std::size_t i = 0; i < d; ++i) centroid[i] += simplex[v][i] / static_cast<double>(d);
    }
    auto along = [&](double t) {
      std::vector<double> x(d);
      for (std::size_t i = 0; i < d; ++i) x[i] = centroid[i] + t * (simplex[worst][i] - centroid[i]);
      return x;
    };
    const auto xr = along(-1.0);
    const double fr = eval(xr);
    if (fr > f[best]) {
      if (out.history.size() >= budget) break;
      const auto xe = along(-2.0);
      const double fe = eval(xe);
      if (fe > fr) { simplex[worst] = xe; f[worst] = fe; } else { simplex[worst] = xr; f[worst] = fr; }
      continue;
    }
    if (fr > f[second]) {
      simplex[worst] = xr;
      f[worst] = fr;
      continue;
    }
    if (out.history.size() >= budget) break;
    const bool outside = fr > f[worst];
    const auto xc = along(outside ? -0.5 : 0.5);
    const double fc = eval(xc);
    if (outside ? fc >= fr : fc > f[worst]) {
      simplex[worst] = xc;
      f[worst] = fc;
      continue;
    }
    for (std::size_t v = 0; v <= d && out.history.size() < budget; ++v) {
      if (v == best) continue;
      for (std::size_t i = 0; i < d; ++i) simplex[v][i] = 0.5 * (simplex[v][i] + simplex[best][i]);
      f[v] = eval(simplex[v]);
    }
  }
  return out;
}

}  // namespace

std::size_t SearchSpace::curve_dimension() const {
  return curve_degree >= 2 ? 2 * static_cast<std::size_t>(curve_degree - 1) : 0;
}

std::size_t SearchSpace::norm_dimension() const {
  if (normalization == Normalization::Euclidean || fixed_norm || norm_degree < 2) return 0;
  return 2 * static_cast<std::size_t>(norm_degree / 2);
}

std::pair<SupportProfile, NormProfile> realize(const SearchSpace& space,
                                               const std::vector<double>& point, std::size_t n) {
  if (point.size() != space.dimension()) {
    throw ValidationError("search point has " + std::to_string(point.size()) +
                          " coordinates, space has " + std::to_string(space.dimension()));
  }
  SupportProfile p(series(n, point, 0, 2, space.curve_degree, 1));
  if (space.normalization == Normalization::Euclidean) {
    return {std::move(p), NormProfile::euclidean(n)};
  }
  if (space.fixed_norm) return {std::move(p), NormProfile(space.fixed_norm->synthesize(n))};
  return {std::move(p), NormProfile(series(n, point, space.curve_dimension(), 2,
                                           space.norm_degree, 2))};
}

double sharpness_objective(const SearchSpace& space, const std::vector<double>& point,
                           std::size_t resolution) {
  for (double x : point) {
    if (!std::isfinite(x) || std::abs(x) > space.bound) return kNegInf;
  }
  if (point.size() != space.dimension()) return kNegInf;
  if (radius_ratio(point, 0, 2, space.curve_degree, 1) < space.radius_floor) return kNegInf;
  if (space.norm_dimension() > 0 &&
      radius_ratio(point, space.curve_dimension(), 2, space.norm_degree, 2) < space.radius_floor) {
    return kNegInf;
  }
  try {
    const auto [p, h] = realize(space, point, resolution);
    const PlaneReport r = space.normalization == Normalization::Euclidean
                              ? hurwitz_report(p)
                              : reverse_iso_report(p, h);
    if (std::abs(r.evolute_area) < 1e-10 * std::abs(r.area)) return 0.0;
    return r.lhs / r.rhs;
  } catch (const ValidationError&) {
    return kNegInf;
  }
}

SearchResult maximize(const SearchSpace& space, std::size_t budget, std::uint64_t seed,
                      unsigned threads) {
  if (budget < kMinBudget) {
    throw ValidationError("search budget must be at least " + std::to_string(kMinBudget));
  }
  if (space.resolution < 8 || space.resolution % 2 != 0) {
    throw ValidationError("search resolution must be even and >= 8");
  }
  SearchResult result;
  result.resolution = space.resolution;
  const std::size_t d = space.dimension();

  std::vector<Restart> runs;
  if (d == 0) {
    runs.resize(1);
    const double v = sharpness_objective(space, {}, space.resolution);
    runs[0].history.push_back(v);
    runs[0].value = v;
    if (v > kNegInf) runs[0].best = {};
  } else {
    const std::size_t per = std::max<std::size_t>(kMinBudget, 100 * (d + 1));
    const std::size_t count = (budget + per - 1) / per;
    runs.resize(count);
    std::vector<std::size_t> share(count, per);
    share.back() = budget - per * (count - 1);
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (workers == 1) {
      for (std::size_t r = 0; r < count; ++r) runs[r] = nelder_mead(space, share[r], Rng::derive(seed, r));
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t r = w; r < count; r += workers) {
            runs[r] = nelder_mead(space, share[r], Rng::derive(seed, r));
          }
        });
      }
      for (auto& t : pool) t.join();
    }
  }

  result.restarts = runs.size();
  double incumbent = kNegInf;
  for (const auto& run : runs) {
    for (double v : run.history) {
      incumbent = std::max(incumbent, v);
      result.trace.push_back(incumbent);
    }
    if (run.value > kNegInf && (!result.feasible || run.value > result.objective)) {
      result.feasible = true;
      result.objective = run.value;
      result.point = run.best;
    }
  }
  result.evaluations = result.trace.size();
  if (!result.feasible) {
    result.objective = kNegInf;
    return result;
  }
  result.recertified_resolution = 2 * space.resolution;
  result.recertified_objective = sharpness_objective(space, result.point, 2 * space.resolution);
  result.recertified = std::abs(result.recertified_objective - result.objective) <=
                       1e-6 * std::max(std::abs(result.objective), 1e-300);
  return result;
}

}  // namespace isogauge
