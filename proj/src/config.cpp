#include "isogauge/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>

#include "isogauge/families.hpp"

namespace isogauge {

using nlohmann::json;

namespace {

std::string key_path(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void only_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      throw ConfigError(key_path(path, k), "unknown key");
    }
  }
}

// Exactly one of `keys` must be present; returns it.
std::string one_of(const json& j, const std::string& path, std::initializer_list<std::string_view> keys) {
  std::string found;
  for (auto k : keys) {
    if (j.contains(k)) {
      if (!found.empty()) {
        throw ConfigError(path, "'" + found + "' and '" + std::string(k) + "' are exclusive");
      }
      found = k;
    }
  }
  if (found.empty()) {
    std::string list;
    for (auto k : keys) list += (list.empty() ? "" : ", ") + std::string(k);
    throw ConfigError(path, "expected one of: " + list);
  }
  return found;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
  return v;
}

double number_or(const json& j, std::string_view key, const std::string& path, double fallback) {
  return j.contains(key) ? number(j.at(std::string(key)), key_path(path, key)) : fallback;
}

std::int64_t integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::int64_t integer_or(const json& j, std::string_view key, const std::string& path,
                        std::int64_t lo, std::int64_t hi, std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  const auto p = key_path(path, key);
  const auto v = integer(j.at(std::string(key)), p);
  if (v < lo || v > hi) {
    throw ConfigError(p, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return v;
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(number(j[i], index_path(path, i)));
  return v;
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

void check_profile(const json& j, const std::string& path) {
  only_keys(j, path, {"fourier", "samples"});
  if (one_of(j, path, {"fourier", "samples"}) == "fourier") {
    coefficients_from_json(j, path);
  } else {
    const auto v = numbers(j.at("samples"), key_path(path, "samples"));
    if (v.size() < 8 || v.size() % 2) {
      throw ConfigError(key_path(path, "samples"), "needs an even count >= 8");
    }
  }
}

void check_field(const json& j, const std::string& path) {
  only_keys(j, path, {"zonal", "harmonics", "spheroid", "grid"});
  const auto kind = one_of(j, path, {"zonal", "harmonics", "spheroid", "grid"});
  const auto p = key_path(path, kind);
  const json& body = j.at(kind);
  if (kind == "zonal") {
    if (numbers(body, p).empty()) throw ConfigError(p, "needs at least one coefficient");
  } else if (kind == "harmonics") {
    if (!body.is_array()) throw ConfigError(p, "expected an array of [l, m, coefficient]");
    for (std::size_t i = 0; i < body.size(); ++i) {
      const auto q = index_path(p, i);
      if (!body[i].is_array() || body[i].size() != 3) throw ConfigError(q, "expected [l, m, coefficient]");
      const auto l = integer(body[i][0], index_path(q, 0));
      const auto m = integer(body[i][1], index_path(q, 1));
      number(body[i][2], index_path(q, 2));
      if (l < 0 || std::abs(m) > l) throw ConfigError(q, "need l >= 0 and |m| <= l");
    }
  } else if (kind == "spheroid") {
    only_keys(body, p, {"equatorial", "polar"});
    for (auto k : {"equatorial", "polar"}) {
      if (!body.contains(k)) throw ConfigError(key_path(p, k), "missing");
      if (number(body.at(k), key_path(p, k)) <= 0.0) throw ConfigError(key_path(p, k), "must be positive");
    }
  } else {
    only_keys(body, p, {"n_theta", "n_phi", "values"});
    for (auto k : {"n_theta", "n_phi", "values"}) {
      if (!body.contains(k)) throw ConfigError(key_path(p, k), "missing");
    }
    const auto nt = integer(body.at("n_theta"), key_path(p, "n_theta"));
    const auto np = integer(body.at("n_phi"), key_path(p, "n_phi"));
    if (nt < 4 || np < 8 || np % 2) throw ConfigError(p, "need n_theta >= 4 and even n_phi >= 8");
    if (numbers(body.at("values"), key_path(p, "values")).size() != static_cast<std::size_t>(nt * np)) {
      throw ConfigError(key_path(p, "values"), "expected n_theta * n_phi values");
    }
  }
}

void check_count(const json& r, const std::string& path) {
  if (!r.contains("count")) throw ConfigError(key_path(path, "count"), "missing");
  integer_or(r, "count", path, 1, 100000, 1);
}

void check_name(const json& f, const std::string& path) {
  if (f.contains("name")) text(f.at("name"), key_path(path, "name"));
}

void check_plane(const json& f, const std::string& path, bool allow_random) {
  if (one_of(f, path, {"curve", "random"}) == "random") {
    if (!allow_random) throw ConfigError(key_path(path, "random"), "not allowed here");
    const auto p = key_path(path, "random");
    only_keys(f.at("random"), p, {"count", "curve_degree", "norm_degree", "amplitude", "norm_amplitude", "euclidean"});
    check_count(f.at("random"), p);
    integer_or(f.at("random"), "curve_degree", p, 2, 32, 6);
    integer_or(f.at("random"), "norm_degree", p, 0, 32, 4);
    number_or(f.at("random"), "amplitude", p, 0.15);
    number_or(f.at("random"), "norm_amplitude", p, 0.3);
    if (f.at("random").contains("euclidean") && !f.at("random").at("euclidean").is_boolean()) {
      throw ConfigError(key_path(p, "euclidean"), "expected a boolean");
    }
  } else {
    check_profile(f.at("curve"), key_path(path, "curve"));
  }
  if (f.contains("norm")) check_profile(f.at("norm"), key_path(path, "norm"));
  if (f.contains("offset")) check_profile(f.at("offset"), key_path(path, "offset"));
}

void check_surface(const json& f, const std::string& path, bool allow_random) {
  if (one_of(f, path, {"field", "random"}) == "random") {
    if (!allow_random) throw ConfigError(key_path(path, "random"), "not allowed here");
    const auto p = key_path(path, "random");
    only_keys(f.at("random"), p, {"count", "degree", "total", "offset_amplitude"});
    check_count(f.at("random"), p);
    integer_or(f.at("random"), "degree", p, 1, 16, 4);
    number_or(f.at("random"), "total", p, 0.05);
    number_or(f.at("random"), "offset_amplitude", p, 0.0);
  } else {
    check_field(f.at("field"), key_path(path, "field"));
  }
  if (f.contains("offset")) check_field(f.at("offset"), key_path(path, "offset"));
}

void check_sphere_curve(const json& f, const std::string& path, bool allow_random) {
  const auto kind = one_of(f, path, {"points", "circle", "gnomonic", "random"});
  const auto p = key_path(path, kind);
  const json& body = f.at(kind);
  if (kind == "points") {
    if (!body.is_array()) throw ConfigError(p, "expected an array of [x, y, z]");
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (numbers(body[i], index_path(p, i)).size() != 3) throw ConfigError(index_path(p, i), "expected [x, y, z]");
    }
  } else if (kind == "circle") {
    only_keys(body, p, {"colatitude"});
    if (!body.contains("colatitude")) throw ConfigError(key_path(p, "colatitude"), "missing");
    number(body.at("colatitude"), key_path(p, "colatitude"));
  } else if (kind == "gnomonic") {
    only_keys(body, p, {"curve", "ellipse", "height"});
    if (one_of(body, p, {"curve", "ellipse"}) == "curve") {
      check_profile(body.at("curve"), key_path(p, "curve"));
    } else {
      const auto q = key_path(p, "ellipse");
      only_keys(body.at("ellipse"), q, {"a", "b", "center"});
      for (auto k : {"a", "b"}) {
        if (!body.at("ellipse").contains(k)) throw ConfigError(key_path(q, k), "missing");
        number(body.at("ellipse").at(k), key_path(q, k));
      }
      if (body.at("ellipse").contains("center") &&
          numbers(body.at("ellipse").at("center"), key_path(q, "center")).size() != 2) {
        throw ConfigError(key_path(q, "center"), "expected [x, y]");
      }
    }
    number_or(body, "height", p, 1.0);
  } else {
    if (!allow_random) throw ConfigError(p, "not allowed here");
    only_keys(body, p, {"count", "height"});
    check_count(body, p);
    number_or(body, "height", p, 1.0);
  }
}

void check_poincare(const json& f, const std::string& path, bool allow_random) {
  const auto kind = one_of(f, path, {"field", "circle", "random"});
  const auto p = key_path(path, kind);
  if (kind == "field") {
    check_field(f.at(kind), p);
  } else if (kind == "circle") {
    check_profile(f.at(kind), p);
  } else {
    if (!allow_random) throw ConfigError(p, "not allowed here");
    only_keys(f.at(kind), p, {"count", "degree", "dimension"});
    check_count(f.at(kind), p);
    integer_or(f.at(kind), "degree", p, 0, 16, 4);
    integer_or(f.at(kind), "dimension", p, 1, 2, 2);
  }
}

void check_search(const json& f, const std::string& path) {
  only_keys(f, path, {"name", "normalization", "curve_degree", "norm_degree", "norm", "bound",
                      "budget", "radius_floor"});
  check_name(f, path);
  if (f.contains("normalization")) {
    const auto n = text(f.at("normalization"), key_path(path, "normalization"));
    if (n != "euclidean" && n != "anisotropic") {
      throw ConfigError(key_path(path, "normalization"), "expected 'euclidean' or 'anisotropic'");
    }
  }
  integer_or(f, "curve_degree", path, 0, 32, 4);
  integer_or(f, "norm_degree", path, 0, 32, 0);
  integer_or(f, "budget", path, 50, 10000000, 2000);
  if (f.contains("norm")) check_profile(f.at("norm"), key_path(path, "norm"));
  if (number_or(f, "bound", path, 0.5) <= 0.0) throw ConfigError(key_path(path, "bound"), "must be positive");
  number_or(f, "radius_floor", path, 1e-2);
}

void check_family(Command c, const json& f, const std::string& path) {
  if (!f.is_object()) throw ConfigError(path, "expected an object");
  switch (c) {
    case Command::Plane:
      only_keys(f, path, {"name", "curve", "norm", "offset", "random"});
      check_name(f, path);
      check_plane(f, path, true);
      break;
    case Command::Surface:
      only_keys(f, path, {"name", "field", "offset", "random"});
      check_name(f, path);
      check_surface(f, path, true);
      break;
    case Command::SphereCurve:
      only_keys(f, path, {"name", "points", "circle", "gnomonic", "random"});
      check_name(f, path);
      check_sphere_curve(f, path, true);
      break;
    case Command::Poincare:
      only_keys(f, path, {"name", "field", "circle", "random"});
      check_name(f, path);
      check_poincare(f, path, true);
      break;
    case Command::Search:
      check_search(f, path);
      break;
    case Command::Converge: {
      if (!f.contains("kind")) throw ConfigError(key_path(path, "kind"), "missing");
      const auto kind = text(f.at("kind"), key_path(path, "kind"));
      if (kind == "plane") {
        only_keys(f, path, {"name", "kind", "curve", "norm", "offset"});
        check_plane(f, path, false);
      } else if (kind == "surface") {
        only_keys(f, path, {"name", "kind", "field", "offset"});
        check_surface(f, path, false);
      } else if (kind == "sphere-curve") {
        only_keys(f, path, {"name", "kind", "circle", "gnomonic"});
        check_sphere_curve(f, path, false);
      } else if (kind == "poincare") {
        only_keys(f, path, {"name", "kind", "field", "circle"});
        check_poincare(f, path, false);
      } else {
        throw ConfigError(key_path(path, "kind"), "expected plane, surface, sphere-curve or poincare");
      }
      check_name(f, path);
      break;
    }
  }
}

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::Plane: return "plane";
    case Command::Surface: return "surface";
    case Command::SphereCurve: return "sphere-curve";
    case Command::Poincare: return "poincare";
    case Command::Search: return "search";
    case Command::Converge: return "converge";
  }
  return "?";
}

std::size_t RunConfig::effective_resolution() const {
  if (resolution) return resolution;
  switch (command) {
    case Command::Surface:
    case Command::Poincare: return 48;
    default: return 256;
  }
}

double RunConfig::tolerance_for(const std::string& check) const {
  const auto it = check_tolerance.find(check);
  return it == check_tolerance.end() ? tolerance : it->second;
}

RunConfig parse_config(const std::string& text_in) {
  json doc;
  try {
    doc = json::parse(text_in);
  } catch (const json::parse_error& e) {
    throw ConfigError(line_column(text_in, e.byte), "JSON syntax error");
  }
  only_keys(doc, "", {"command", "resolution", "tolerance", "seed", "families", "ladder",
                      "factor", "floor", "functionals"});
  if (!doc.contains("command")) throw ConfigError("command", "missing");
  const auto name = text(doc.at("command"), "command");
  RunConfig cfg;
  const Command all[] = {Command::Plane, Command::Surface, Command::SphereCurve,
                         Command::Poincare, Command::Search, Command::Converge};
  bool known = false;
  for (auto c : all) {
    if (name == command_name(c)) {
      cfg.command = c;
      known = true;
    }
  }
  if (!known) throw ConfigError("command", "unknown command '" + name + "'");

  cfg.resolution = static_cast<std::size_t>(integer_or(doc, "resolution", "", 0, 1 << 16, 0));
  if (cfg.resolution && cfg.resolution < 4) throw ConfigError("resolution", "must be >= 4");
  if (doc.contains("tolerance") && doc.at("tolerance").is_object()) {
    for (const auto& [k, v] : doc.at("tolerance").items()) {
      const double t = number(v, key_path("tolerance", k));
      if (!(t > 0.0)) throw ConfigError(key_path("tolerance", k), "must be positive");
      if (k == "default") {
        cfg.tolerance = t;
      } else {
        cfg.check_tolerance[k] = t;
      }
    }
  } else {
    cfg.tolerance = number_or(doc, "tolerance", "", 1e-8);
    if (!(cfg.tolerance > 0.0)) throw ConfigError("tolerance", "must be positive");
  }
  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (s.is_number_unsigned()) {
      cfg.seed = s.get<std::uint64_t>();
    } else {
      throw ConfigError("seed", "expected a non-negative integer");
    }
  }

  const bool converge = cfg.command == Command::Converge;
  for (auto k : {"ladder", "factor", "floor", "functionals"}) {
    if (doc.contains(k) && !converge) throw ConfigError(k, "only valid for the converge command");
  }
  if (converge) {
    if (!doc.contains("ladder")) throw ConfigError("ladder", "missing");
    const auto ladder = numbers(doc.at("ladder"), "ladder");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      const auto n = integer(doc.at("ladder")[i], index_path("ladder", i));
      if (n < 4 || (i && n <= static_cast<std::int64_t>(cfg.ladder.back()))) {
        throw ConfigError(index_path("ladder", i), "ladder must increase and start at >= 4");
      }
      cfg.ladder.push_back(static_cast<std::size_t>(n));
    }
    if (cfg.ladder.size() < 3) throw ConfigError("ladder", "needs at least three resolutions");
    cfg.factor = number_or(doc, "factor", "", 10.0);
    cfg.floor = number_or(doc, "floor", "", 1e-11);
    if (doc.contains("functionals")) {
      const json& fs = doc.at("functionals");
      if (!fs.is_array()) throw ConfigError("functionals", "expected an array of names");
      for (std::size_t i = 0; i < fs.size(); ++i) cfg.functionals.push_back(text(fs[i], index_path("functionals", i)));
    }
  }

  if (!doc.contains("families")) throw ConfigError("families", "missing");
  const json& fams = doc.at("families");
  if (!fams.is_array() || fams.empty()) throw ConfigError("families", "expected a non-empty array");
  for (std::size_t i = 0; i < fams.size(); ++i) {
    check_family(cfg.command, fams[i], index_path("families", i));
    cfg.families.push_back(fams[i]);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open configuration file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

FourierCoefficients coefficients_from_json(const json& spec, const std::string& path) {
  if (spec.contains("samples")) {
    const auto v = numbers(spec.at("samples"), key_path(path, "samples"));
    try {
      return FourierCoefficients::analyze(PeriodicSamples(v));
    } catch (const ValidationError& e) {
      throw ConfigError(key_path(path, "samples"), e.what());
    }
  }
  const auto p = key_path(path, "fourier");
  const json& f = spec.at("fourier");
  only_keys(f, p, {"a0", "cos", "sin"});
  FourierCoefficients c;
  c.a0 = number_or(f, "a0", p, 0.0);
  if (f.contains("cos")) c.cos = numbers(f.at("cos"), key_path(p, "cos"));
  if (f.contains("sin")) c.sin = numbers(f.at("sin"), key_path(p, "sin"));
  const std::size_t band = std::max(c.cos.size(), c.sin.size());
  c.cos.resize(band, 0.0);
  c.sin.resize(band, 0.0);
  return c;
}

PeriodicSamples profile_from_json(const json& spec, std::size_t n, const std::string& path) {
  try {
    if (spec.contains("samples")) {
      PeriodicSamples s(numbers(spec.at("samples"), key_path(path, "samples")));
      return s.size() == n ? s : resample(s, n);
    }
    return coefficients_from_json(spec, path).synthesize(n);
  } catch (const ConfigError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ConfigError(path, e.what());
  }
}

GridPtr grid_for(const json& spec, const GridPtr& fallback) {
  if (!spec.contains("grid")) return fallback;
  const json& g = spec.at("grid");
  return SphereGrid::make(g.at("n_theta").get<std::size_t>(), g.at("n_phi").get<std::size_t>());
}

SphereScalarField field_from_json(const json& spec, const GridPtr& grid, const std::string& path) {
  if (spec.contains("zonal")) {
    return zonal_support(grid, numbers(spec.at("zonal"), key_path(path, "zonal")));
  }
  if (spec.contains("harmonics")) {
    auto f = SphereScalarField::constant(grid, 0.0);
    for (const auto& t : spec.at("harmonics")) {
      f = f + t[2].get<double>() * harmonic_field(grid, t[0].get<int>(), t[1].get<int>());
    }
    return f;
  }
  if (spec.contains("spheroid")) {
    return spheroid_support(grid, spec.at("spheroid").at("equatorial").get<double>(),
                            spec.at("spheroid").at("polar").get<double>());
  }
  const auto p = key_path(path, "grid");
  auto own = grid_for(spec, grid);
  return SphereScalarField(own, numbers(spec.at("grid").at("values"), key_path(p, "values")));
}

}  // namespace isogauge
