#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "isogauge/config.hpp"
#include "isogauge/run.hpp"

namespace fs = std::filesystem;
using namespace isogauge;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify isoperimetric-type identities and inequalities on sampled geometry"};
  std::string config_path, out_dir, format = "csv";
  std::size_t resolution = 0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "Directory for report files (default: stdout)");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  auto* res_opt = app.add_option("--resolution", resolution, "Samples per curve / colatitude rings")
                      ->check(CLI::Range(std::size_t{4}, std::size_t{1} << 16));
  auto* tol_opt = app.add_option("--tolerance", tolerance, "Default certification tolerance")
                      ->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Seed for random families and searches");
  app.add_option("--jobs", jobs, "Worker threads")->envname("ISOGAUGE_JOBS")->check(CLI::Range(1u, 1024u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  RunResult result;
  try {
    RunConfig cfg = load_config(config_path);
    if (*res_opt) cfg.resolution = resolution;
    if (*tol_opt) cfg.tolerance = tolerance;
    if (*seed_opt) cfg.seed = seed;
    result = execute(cfg, jobs);
  } catch (const ConfigError& e) {
    std::cerr << "config error at " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }

  try {
    const std::string report = format == "json" ? report_json(result) : report_csv(result);
    if (out_dir.empty()) {
      std::cout << report;
    } else {
      fs::create_directories(out_dir);
      write_file(fs::path(out_dir) / ("report." + format), report);
      if (format == "csv" && !result.convergence.empty()) {
        write_file(fs::path(out_dir) / "convergence.csv", convergence_csv(result));
      }
      if (format == "csv" && !result.traces.empty()) {
        write_file(fs::path(out_dir) / "trace.csv", trace_csv(result));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return 1;
  }

  for (const auto& f : result.failures) std::cerr << "FAILED " << f << "\n";
  return result.exit_code();
}
