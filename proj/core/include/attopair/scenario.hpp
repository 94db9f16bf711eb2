#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "attopair/cavity.hpp"
#include "attopair/schemes.hpp"

namespace attopair {

struct GeometrySettings {
  std::vector<double> aspect_ratios;  // empty: 25 log-spaced ratios on [1, 148]
  double rel_tol = 1e-9;
  PolarizationTransport transport = PolarizationTransport::mirror;
  std::vector<double> mc_ratios;  // MC oracle rows added to the geometry CSV
  std::size_t mc_samples = 1'000'000;
};

struct SpectrumSettings {
  std::string provider = "pole";
  std::size_t omega_points = 2048;
  double t_max_au = 40.0;
  std::size_t t_points = 4097;
};

/// File names relative to the output directory; an empty name skips the output.
struct OutputSettings {
  std::string fig_s1 = "fig_s1.csv";
  std::string fig2 = "fig2.csv";
  std::string spectrum = "spectrum.csv";
  bool rates = true;  // rates_<scheme>.json per configured scheme
  std::string repro_table = "repro_table.json";
};

struct Scenario {
  std::string name;
  std::string species = "He";
  std::uint64_t seed = 42;
  GeometrySettings geometry;
  SpectrumSettings spectrum;
  std::vector<SchemeConfig> schemes;
  OutputSettings outputs;
};

/// Strict parse: unknown keys and wrong types throw ConfigError with the
/// line/column of the offending key.
Scenario parse_scenario(const std::string& json_text);
/// Throws ConfigError when the file cannot be read.
Scenario load_scenario(const std::string& path);

struct ScenarioStatus {
  int exit_code = 0;  // 0 ok, 2 configuration, 3 numerical failure
  std::string message;
  std::vector<std::string> written;
};

/// Never throws; failures are reported through the exit code and a message
/// that names the failing operation.
ScenarioStatus run_scenario(const std::string& path, const std::string& out_dir);
ScenarioStatus run_scenario(const Scenario& scenario, const std::string& out_dir);

}  // namespace attopair
