#pragma once

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isogauge/error.hpp"
#include "isogauge/spectral.hpp"
#include "isogauge/sphere.hpp"

namespace isogauge {

/// Malformed configuration; `where` is a JSON path such as families[2].curve
/// or line:column for syntax errors.
class ConfigError : public ValidationError {
 public:
  ConfigError(const std::string& where, const std::string& what)
      : ValidationError(where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

enum class Command { Plane, Surface, SphereCurve, Poincare, Search, Converge };

const char* command_name(Command c);

/// A validated run description. Family entries stay as JSON; their shape has
/// been checked against the command's schema.
struct RunConfig {
  Command command = Command::Plane;
  std::size_t resolution = 0;  // 0: per-command default
  double tolerance = 1e-8;
  /// Per-check overrides from {"tolerance": {"default": .., "<check>": ..}}.
  /// focal_volume defaults to 1e-5: generic surfaces have umbilics where the
  /// ordered radii are only Lipschitz.
  std::map<std::string, double> check_tolerance{{"focal_volume", 1e-5}};
  std::uint64_t seed = 0;
  std::vector<nlohmann::json> families;

  // converge only
  std::vector<std::size_t> ladder;
  double factor = 10.0;
  double floor = 1e-11;
  std::vector<std::string> functionals;

  std::size_t effective_resolution() const;
  double tolerance_for(const std::string& check) const;
};

/// Parses and schema-checks a JSON document. Unknown keys are rejected.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// {"fourier": {"a0": .., "cos": [..], "sin": [..]}} or {"samples": [..]}
/// realised on n nodes (samples are resampled spectrally).
PeriodicSamples profile_from_json(const nlohmann::json& spec, std::size_t n,
                                  const std::string& path);

/// Fourier form of a profile spec; samples are analysed.
FourierCoefficients coefficients_from_json(const nlohmann::json& spec, const std::string& path);

/// {"zonal": [c_0, c_1, ..]}, {"harmonics": [[l, m, c], ..]},
/// {"spheroid": {"equatorial": a, "polar": c}} or
/// {"grid": {"n_theta": .., "n_phi": .., "values": [..]}}. Grid values are
/// row-major over (colatitude ring, longitude), rings ordered from the north
/// pole, and fix their own grid; the other forms are sampled on `grid`.
SphereScalarField field_from_json(const nlohmann::json& spec, const GridPtr& grid,
                                  const std::string& path);

/// Grid a field spec lives on: its own for "grid" specs, otherwise `fallback`.
GridPtr grid_for(const nlohmann::json& spec, const GridPtr& fallback);

}  // namespace isogauge
