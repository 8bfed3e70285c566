#include "isogauge/run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <thread>

#include "isogauge/families.hpp"
#include "isogauge/plane.hpp"
#include "isogauge/search.hpp"
#include "isogauge/sphere_curve.hpp"
#include "isogauge/surface.hpp"

namespace isogauge {

using nlohmann::json;

namespace {

constexpr double pi = std::numbers::pi;

using Rows = std::vector<ReportRow>;
using Task = std::function<Rows()>;

// Sample extrema and flags: these move with the node positions and are not
// expected to converge spectrally.
const std::set<std::string> kNodeDependent = {"min_gap", "max_gap", "umbilic_ratio",
                                              "evolute_cusps", "bound_equality"};

std::string family_name(const json& f, std::size_t index) {
  return f.contains("name") ? f.at("name").get<std::string>() : "family" + std::to_string(index);
}

std::string parameters_of(const json& f) {
  json p = f;
  p.erase("name");
  return p.dump();
}

std::string path_of(std::size_t index) { return "families[" + std::to_string(index) + "]"; }

Rows tag(const std::string& family, const std::string& params, std::vector<InequalityReport> reports) {
  Rows rows;
  for (auto& r : reports) rows.push_back({family, params, std::move(r)});
  return rows;
}

std::vector<InequalityReport> plane_reports(const RunConfig& cfg, const SupportProfile& p,
                                            const NormProfile& h, const PeriodicSamples* offset) {
  std::vector<InequalityReport> out;
  out.push_back(reverse_iso_report(p, h, cfg.tolerance_for("reverse_iso")));
  out.push_back(hurwitz_report(p, cfg.tolerance_for("hurwitz")));
  out.push_back(total_curvature_identity(p, h, cfg.tolerance_for("total_curvature")));
  if (offset) out.push_back(normal_graph_area(p, h, *offset, cfg.tolerance_for("normal_graph_area")));
  return out;
}

std::vector<InequalityReport> plane_family(const RunConfig& cfg, const json& f, std::size_t n,
                                           const std::string& path) {
  SupportProfile p(profile_from_json(f.at("curve"), n, path + ".curve"));
  const NormProfile h = f.contains("norm") ? NormProfile(profile_from_json(f.at("norm"), n, path + ".norm"))
                                           : NormProfile::euclidean(n);
  if (f.contains("offset")) {
    const auto phi = profile_from_json(f.at("offset"), n, path + ".offset");
    return plane_reports(cfg, p, h, &phi);
  }
  return plane_reports(cfg, p, h, nullptr);
}

std::vector<InequalityReport> surface_reports(const RunConfig& cfg, const SupportField& h,
                                              const SphereScalarField* offset) {
  std::vector<InequalityReport> out;
  out.push_back(gauss_bonnet_check(h, cfg.tolerance_for("gauss_bonnet")));
  out.push_back(deficit_identity_check(h, cfg.tolerance_for("deficit_identity")));
  out.push_back(focal_volume_identity(h, cfg.tolerance_for("focal_volume")));
  if (offset) out.push_back(normal_graph_volume_check(h, *offset, cfg.tolerance_for("normal_graph_volume")));
  out.push_back(reverse_minkowski_report(h, cfg.tolerance_for("reverse_minkowski")));
  return out;
}

GridPtr surface_grid(std::size_t n) { return SphereGrid::make(n, 2 * n); }

std::vector<InequalityReport> surface_family(const RunConfig& cfg, const json& f, std::size_t n,
                                             const std::string& path) {
  const auto grid = grid_for(f.at("field"), surface_grid(n));
  SupportField h(field_from_json(f.at("field"), grid, path + ".field"));
  if (f.contains("offset")) {
    const auto u = field_from_json(f.at("offset"), grid, path + ".offset");
    if (u.grid()->size() != grid->size()) {
      throw ConfigError(path + ".offset", "offset grid differs from the support field grid");
    }
    return surface_reports(cfg, h, &u);
  }
  return surface_reports(cfg, h, nullptr);
}

InequalityReport curve_report(const RunConfig& cfg, const SphericalCurve& c) {
  auto r = reverse_iso_identity_report(c, cfg.tolerance_for("sphere_curve_identity"));
  const auto e = spherical_evolute(frame_and_curvature(c));
  InequalityReport out = r;
  out.add("evolute_cusps", static_cast<double>(e.cusps.size()));
  return out;
}

PlanarFront ellipse_front(double a, double b, double cx, double cy, std::size_t n) {
  PlanarFront f;
  for (std::size_t j = 0; j < n; ++j) {
    const double u = PeriodicSamples::node(j, n);
    f.points.emplace_back(cx + a * std::cos(u), cy + b * std::sin(u));
  }
  return f;
}

std::vector<InequalityReport> curve_family(const RunConfig& cfg, const json& f, std::size_t n,
                                           const std::string& path) {
  if (f.contains("points")) {
    std::vector<Eigen::Vector3d> pts;
    for (const auto& q : f.at("points")) pts.emplace_back(q[0].get<double>(), q[1].get<double>(), q[2].get<double>());
    return {curve_report(cfg, SphericalCurve(std::move(pts)))};
  }
  if (f.contains("circle")) {
    const double alpha = f.at("circle").at("colatitude").get<double>();
    std::vector<Eigen::Vector3d> pts(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double u = PeriodicSamples::node(j, n);
      pts[j] = {std::sin(alpha) * std::cos(u), std::sin(alpha) * std::sin(u), std::cos(alpha)};
    }
    return {curve_report(cfg, SphericalCurve(std::move(pts)))};
  }
  const json& g = f.at("gnomonic");
  const double height = g.value("height", 1.0);
  PlanarFront planar;
  if (g.contains("curve")) {
    planar = curve_from_support(SupportProfile(profile_from_json(g.at("curve"), n, path + ".gnomonic.curve")));
  } else {
    const json& e = g.at("ellipse");
    const auto c = e.value("center", std::vector<double>{0.0, 0.0});
    planar = ellipse_front(e.at("a").get<double>(), e.at("b").get<double>(), c[0], c[1], n);
  }
  return {curve_report(cfg, gnomonic_lift(planar, height))};
}

std::vector<InequalityReport> poincare_family(const RunConfig& cfg, const json& f, std::size_t n,
                                              const std::string& path) {
  const double tol = cfg.tolerance_for("poincare_gap");
  if (f.contains("circle")) return {poincare_gap_check(profile_from_json(f.at("circle"), n, path + ".circle"), tol)};
  const auto grid = grid_for(f.at("field"), surface_grid(n));
  return {poincare_gap_check(field_from_json(f.at("field"), grid, path + ".field"), tol)};
}

// Per-resolution rows of a concrete (non-random) family.
std::vector<InequalityReport> concrete(const RunConfig& cfg, const std::string& kind, const json& f,
                                       std::size_t n, const std::string& path) {
  if (kind == "plane") return plane_family(cfg, f, n, path);
  if (kind == "surface") return surface_family(cfg, f, n, path);
  if (kind == "sphere-curve") return curve_family(cfg, f, n, path);
  return poincare_family(cfg, f, n, path);
}

void random_tasks(const RunConfig& cfg, const json& f, std::size_t index, std::vector<Task>& tasks) {
  const std::string name = family_name(f, index);
  const json& r = f.at("random");
  const auto count = r.at("count").get<std::size_t>();
  const std::uint64_t family_seed = Rng::derive(cfg.seed, index);
  const std::size_t n = cfg.effective_resolution();
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint64_t seed = Rng::derive(family_seed, k);
    json params = {{"random", r}, {"member", k}, {"seed", seed}};
    const std::string id = name + "#" + std::to_string(k);
    const std::string ps = params.dump();
    tasks.push_back([&cfg, &f, r, n, seed, id, ps]() -> Rows {
      Rng rng(seed);
      switch (cfg.command) {
        case Command::Plane: {
          const auto p = random_support(rng, n, r.value("curve_degree", 6), r.value("amplitude", 0.15));
          const int nd = r.value("norm_degree", 4);
          const auto h = r.value("euclidean", false) || nd < 2
                             ? NormProfile::euclidean(n)
                             : random_norm(rng, n, nd, r.value("norm_amplitude", 0.3));
          if (f.contains("offset")) {
            const auto phi = profile_from_json(f.at("offset"), n, "offset");
            return tag(id, ps, plane_reports(cfg, p, h, &phi));
          }
          return tag(id, ps, plane_reports(cfg, p, h, nullptr));
        }
        case Command::Surface: {
          const auto grid = surface_grid(n);
          SupportField h(random_support_field(rng, grid, r.value("degree", 4), r.value("total", 0.05)));
          const double amp = r.value("offset_amplitude", 0.0);
          if (amp > 0.0) {
            const auto u = random_smooth_field(rng, grid, 4, amp);
            return tag(id, ps, surface_reports(cfg, h, &u));
          }
          return tag(id, ps, surface_reports(cfg, h, nullptr));
        }
        case Command::SphereCurve: {
          const auto p = random_support(rng, n, 6, 0.15);
          const double scale = rng.uniform(0.2, 0.6);
          const double cx = rng.uniform(-0.3, 0.3), cy = rng.uniform(-0.3, 0.3);
          auto planar = curve_from_support(SupportProfile(scale * p.p()));
          for (auto& q : planar.points) q += Eigen::Vector2d(cx, cy);
          return tag(id, ps, {curve_report(cfg, gnomonic_lift(planar, r.value("height", 1.0)))});
        }
        case Command::Poincare: {
          const double tol = cfg.tolerance_for("poincare_gap");
          if (r.value("dimension", 2) == 1) {
            return tag(id, ps, {poincare_gap_check(random_offset(rng, n, r.value("degree", 4), 1.0), tol)});
          }
          const auto field = random_smooth_field(rng, surface_grid(n), r.value("degree", 4), 1.0);
          return tag(id, ps, {poincare_gap_check(field, tol)});
        }
        default:
          return {};
      }
    });
  }
}

SearchSpace search_space(const RunConfig& cfg, const json& f, const std::string& path) {
  SearchSpace s;
  s.normalization = f.value("normalization", std::string("anisotropic")) == "euclidean"
                        ? Normalization::Euclidean
                        : Normalization::Anisotropic;
  s.curve_degree = f.value("curve_degree", 4);
  s.norm_degree = f.value("norm_degree", 0);
  s.bound = f.value("bound", 0.5);
  s.radius_floor = f.value("radius_floor", 1e-2);
  s.resolution = cfg.effective_resolution();
  if (f.contains("norm")) s.fixed_norm = coefficients_from_json(f.at("norm"), path + ".norm");
  return s;
}

InequalityReport search_report(const RunConfig& cfg, const SearchSpace& space,
                               const SearchResult& r, std::size_t budget) {
  InequalityReport rep;
  rep.check = "sharpness_search";
  rep.relation = Relation::Inequality;
  rep.resolution = space.resolution;
  rep.tolerance = cfg.tolerance_for("sharpness_search");
  rep.add("objective", r.objective);
  rep.add("recertified_objective", r.recertified_objective);
  rep.add("recertified_resolution", static_cast<double>(r.recertified_resolution));
  rep.add("evaluations", static_cast<double>(r.evaluations));
  rep.add("budget", static_cast<double>(budget));
  rep.add("restarts", static_cast<double>(r.restarts));
  rep.add("dimension", static_cast<double>(space.dimension()));
  for (std::size_t i = 0; i < r.point.size(); ++i) rep.add("x" + std::to_string(i), r.point[i]);
  rep.require(r.feasible, "infeasible: every evaluated point was rejected");
  if (r.feasible) rep.require(r.recertified, "incumbent changed by more than 1e-6 at doubled resolution");
  // The objective is bounded by 1 under both normalisations.
  rep.settle(r.feasible ? r.objective : 0.0, 1.0, 1.0);
  return rep;
}

void run_pool(std::vector<Task>& tasks, unsigned jobs, std::vector<Rows>& out) {
  out.assign(tasks.size(), {});
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        out[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  // Report the first failure in input order, whatever finished first.
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void converge_family(const RunConfig& cfg, const json& f, std::size_t index, unsigned jobs,
                     RunResult& result) {
  const std::string name = family_name(f, index);
  const std::string kind = f.at("kind").get<std::string>();
  json body = f;
  body.erase("kind");
  std::vector<Task> tasks;
  for (std::size_t n : cfg.ladder) {
    tasks.push_back([&cfg, &kind, body, n, index, name, params = parameters_of(f)] {
      return tag(name, params, concrete(cfg, kind, body, n, path_of(index)));
    });
  }
  std::vector<Rows> per;
  run_pool(tasks, jobs, per);

  // (check, functional) -> values along the ladder
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::pair<std::string, std::string>, std::vector<std::pair<std::size_t, double>>> series;
  auto want = [&](const std::string& check, const std::string& fn) {
    if (cfg.functionals.empty()) return !kNodeDependent.count(fn);
    return std::find(cfg.functionals.begin(), cfg.functionals.end(), fn) != cfg.functionals.end() ||
           std::find(cfg.functionals.begin(), cfg.functionals.end(), check + "." + fn) != cfg.functionals.end();
  };
  for (std::size_t i = 0; i < per.size(); ++i) {
    for (auto& row : per[i]) {
      const auto& r = row.report;
      std::vector<std::pair<std::string, double>> values{{"lhs", r.lhs}, {"rhs", r.rhs}};
      values.insert(values.end(), r.functionals.begin(), r.functionals.end());
      for (const auto& [fn, v] : values) {
        if (!want(r.check, fn)) continue;
        const auto key = std::make_pair(r.check, fn);
        if (!series.count(key)) keys.push_back(key);
        series[key].emplace_back(cfg.ladder[i], v);
      }
      if (!r.passed) {
        result.failures.push_back(name + " " + r.check + " at resolution " +
                                  std::to_string(r.resolution) + " failed certification");
      }
      result.rows.push_back(std::move(row));
    }
  }
  for (const auto& key : keys) {
    const auto& s = series[key];
    double vmax = 0.0;
    for (const auto& [n, v] : s) vmax = std::max(vmax, std::abs(v));
    const double floor = cfg.floor * std::max(1.0, vmax);
    double prev_diff = std::numeric_limits<double>::quiet_NaN();
    bool ok = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      ConvergenceRow c{name, key.first, key.second, s[i].first, s[i].second,
                       std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(), true};
      if (i > 0) {
        c.difference = std::abs(s[i].second - s[i - 1].second);
        if (i > 1) {
          c.ratio = prev_diff / c.difference;
          c.decayed = !(prev_diff > floor) || c.difference <= floor || c.difference * cfg.factor <= prev_diff;
          ok = ok && c.decayed;
        }
        prev_diff = c.difference;
      }
      result.convergence.push_back(c);
    }
    if (!std::isfinite(s.back().second)) ok = false;
    if (!ok) {
      result.failures.push_back(name + " " + key.first + "." + key.second +
                                ": successive differences do not decay by the required factor");
    }
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join_functionals(const InequalityReport& r) {
  std::string s;
  for (const auto& [n, v] : r.functionals) s += (s.empty() ? "" : ";") + n + "=" + format_number(v);
  return s;
}

std::string join_diagnostics(const InequalityReport& r) {
  std::string s;
  for (const auto& d : r.diagnostics) s += (s.empty() ? "" : "; ") + d;
  return s;
}

nlohmann::ordered_json number_json(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(format_number(v));
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunResult execute(const RunConfig& cfg, unsigned jobs) {
  RunResult result;
  result.command = cfg.command;
  if (cfg.command == Command::Converge) {
    for (std::size_t i = 0; i < cfg.families.size(); ++i) converge_family(cfg, cfg.families[i], i, jobs, result);
    return result;
  }

  if (cfg.command == Command::Search) {
    for (std::size_t i = 0; i < cfg.families.size(); ++i) {
      const json& f = cfg.families[i];
      const auto space = search_space(cfg, f, path_of(i));
      const std::size_t budget = f.value("budget", std::size_t{2000});
      const auto r = maximize(space, budget, Rng::derive(cfg.seed, i), jobs);
      const std::string name = family_name(f, i);
      result.rows.push_back({name, parameters_of(f), search_report(cfg, space, r, budget)});
      result.traces.push_back({name, r.trace});
    }
  } else {
    const std::string kind = command_name(cfg.command);
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < cfg.families.size(); ++i) {
      const json& f = cfg.families[i];
      if (f.contains("random")) {
        random_tasks(cfg, f, i, tasks);
        continue;
      }
      tasks.push_back([&cfg, &f, kind, i] {
        return tag(family_name(f, i), parameters_of(f),
                   concrete(cfg, kind, f, cfg.effective_resolution(), path_of(i)));
      });
    }
    std::vector<Rows> per;
    run_pool(tasks, jobs, per);
    for (auto& rows : per) {
      for (auto& row : rows) result.rows.push_back(std::move(row));
    }
  }
  for (const auto& row : result.rows) {
    if (!row.report.passed) {
      result.failures.push_back(row.family + " " + row.report.check + ": " + join_diagnostics(row.report));
    }
  }
  return result;
}

std::string report_csv(const RunResult& result) {
  std::string out =
      "family,parameters,check,lhs,rhs,margin,equality,passed,resolution,tolerance,functionals,diagnostics\n";
  for (const auto& row : result.rows) {
    const auto& r = row.report;
    out += csv_field(row.family) + "," + csv_field(row.parameters) + "," + csv_field(r.check) + "," +
           format_number(r.lhs) + "," + format_number(r.rhs) + "," + format_number(r.margin) + "," +
           (r.equality ? "true" : "false") + "," + (r.passed ? "true" : "false") + "," +
           std::to_string(r.resolution) + "," + format_number(r.tolerance) + "," +
           csv_field(join_functionals(r)) + "," + csv_field(join_diagnostics(r)) + "\n";
  }
  return out;
}

std::string convergence_csv(const RunResult& result) {
  std::string out = "family,check,functional,resolution,value,difference,ratio,decayed\n";
  for (const auto& c : result.convergence) {
    out += csv_field(c.family) + "," + csv_field(c.check) + "," + csv_field(c.functional) + "," +
           std::to_string(c.resolution) + "," + format_number(c.value) + "," +
           (std::isnan(c.difference) ? "" : format_number(c.difference)) + "," +
           (std::isnan(c.ratio) ? "" : format_number(c.ratio)) + "," + (c.decayed ? "true" : "false") + "\n";
  }
  return out;
}

std::string trace_csv(const RunResult& result) {
  std::string out = "family,evaluation,incumbent\n";
  for (const auto& t : result.traces) {
    for (std::size_t i = 0; i < t.incumbent.size(); ++i) {
      out += csv_field(t.family) + "," + std::to_string(i + 1) + "," + format_number(t.incumbent[i]) + "\n";
    }
  }
  return out;
}

std::string report_json(const RunResult& result) {
  nlohmann::ordered_json doc;
  doc["command"] = command_name(result.command);
  doc["passed"] = result.passed();
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : result.rows) {
    const auto& r = row.report;
    nlohmann::ordered_json j;
    j["family"] = row.family;
    j["parameters"] = nlohmann::ordered_json::parse(row.parameters);
    j["check"] = r.check;
    j["relation"] = r.relation == Relation::Identity ? "identity" : "inequality";
    j["lhs"] = number_json(r.lhs);
    j["rhs"] = number_json(r.rhs);
    j["margin"] = number_json(r.margin);
    j["scale"] = number_json(r.scale);
    j["equality"] = r.equality;
    j["passed"] = r.passed;
    j["resolution"] = r.resolution;
    j["tolerance"] = r.tolerance;
    nlohmann::ordered_json fs;
    for (const auto& [n, v] : r.functionals) fs[n] = number_json(v);
    j["functionals"] = fs;
    j["diagnostics"] = r.diagnostics;
    doc["rows"].push_back(j);
  }
  if (!result.convergence.empty()) {
    doc["convergence"] = nlohmann::ordered_json::array();
    for (const auto& c : result.convergence) {
      doc["convergence"].push_back({{"family", c.family},
                                    {"check", c.check},
                                    {"functional", c.functional},
                                    {"resolution", c.resolution},
                                    {"value", number_json(c.value)},
                                    {"difference", number_json(c.difference)},
                                    {"ratio", number_json(c.ratio)},
                                    {"decayed", c.decayed}});
    }
  }
  if (!result.traces.empty()) {
    nlohmann::ordered_json t;
    for (const auto& tr : result.traces) {
      auto arr = nlohmann::ordered_json::array();
      for (double v : tr.incumbent) arr.push_back(number_json(v));
      t[tr.family] = arr;
    }
    doc["traces"] = t;
  }
  doc["failures"] = result.failures;
  return doc.dump(2) + "\n";
}

}  // namespace isogauge
