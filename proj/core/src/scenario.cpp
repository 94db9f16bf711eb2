#include "attopair/scenario.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "attopair/csv.hpp"
#include "attopair/json_locate.hpp"
#include "attopair/quadrature.hpp"
#include "attopair/registry.hpp"
#include "attopair/repro.hpp"
#include "attopair/spectrum.hpp"

namespace attopair {

namespace {

using Path = std::vector<std::string>;

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const Path& path, const std::string& msg) const {
    const auto pos = locate_json_key(text_, path);
    if (pos) throw ConfigError(msg, pos->line, pos->column);
    throw ConfigError(msg);
  }

  void allow(const nlohmann::json& obj, const Path& path, std::initializer_list<const char*> keys) const {
    if (!obj.is_object()) {
      if (path.empty()) throw ConfigError("scenario must be a JSON object", 1, 1);
      fail(path, "'" + path.back() + "' must be an object");
    }
    for (const auto& [key, v] : obj.items()) {
      bool known = false;
      for (const char* k : keys) known = known || key == k;
      if (!known) fail(child(path, key), "unknown key '" + key + "'");
    }
  }

  static Path child(const Path& p, const std::string& key) {
    Path out = p;
    out.push_back(key);
    return out;
  }

  double number(const nlohmann::json& v, const Path& p) const {
    if (!v.is_number()) fail(p, "'" + p.back() + "' must be a number");
    return v.get<double>();
  }

  std::size_t count(const nlohmann::json& v, const Path& p) const {
    if (!v.is_number_unsigned()) fail(p, "'" + p.back() + "' must be a non-negative integer");
    return v.get<std::size_t>();
  }

  std::string text(const nlohmann::json& v, const Path& p) const {
    if (!v.is_string()) fail(p, "'" + p.back() + "' must be a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const nlohmann::json& v, const Path& p) const {
    if (!v.is_array()) fail(p, "'" + p.back() + "' must be an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], child(p, std::to_string(i))));
    return out;
  }

 private:
  const std::string& text_;
};

GeometrySettings read_geometry(const Reader& rd, const nlohmann::json& j) {
  const Path base{"geometry"};
  rd.allow(j, base, {"aspect_ratios", "log_spaced", "rel_tol", "transport", "mc_ratios", "mc_samples"});
  GeometrySettings g;
  if (j.contains("aspect_ratios") && j.contains("log_spaced"))
    rd.fail(Reader::child(base, "log_spaced"), "give either 'aspect_ratios' or 'log_spaced', not both");
  if (j.contains("aspect_ratios")) g.aspect_ratios = rd.numbers(j["aspect_ratios"], Reader::child(base, "aspect_ratios"));
  if (j.contains("log_spaced")) {
    const Path p = Reader::child(base, "log_spaced");
    const auto& ls = j["log_spaced"];
    rd.allow(ls, p, {"min", "max", "points"});
    const double lo = ls.contains("min") ? rd.number(ls["min"], Reader::child(p, "min")) : 1.0;
    const double hi = ls.contains("max") ? rd.number(ls["max"], Reader::child(p, "max")) : 148.0;
    const std::size_t n = ls.contains("points") ? rd.count(ls["points"], Reader::child(p, "points")) : 25;
    try {
      g.aspect_ratios = log_spaced_ratios(lo, hi, n);
    } catch (const std::invalid_argument& e) {
      rd.fail(p, e.what());
    }
  }
  for (std::size_t i = 0; i < g.aspect_ratios.size(); ++i)
    if (!(g.aspect_ratios[i] >= 1.0))
      rd.fail(Path{"geometry", "aspect_ratios", std::to_string(i)}, "aspect ratios must be >= 1");
  if (j.contains("rel_tol")) {
    g.rel_tol = rd.number(j["rel_tol"], Reader::child(base, "rel_tol"));
    if (!(g.rel_tol > 0.0)) rd.fail(Reader::child(base, "rel_tol"), "'rel_tol' must be positive");
  }
  if (j.contains("transport")) {
    const Path p = Reader::child(base, "transport");
    try {
      g.transport = polarization_transport_from_string(rd.text(j["transport"], p));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      rd.fail(p, e.what());
    }
  }
  if (j.contains("mc_ratios")) {
    g.mc_ratios = rd.numbers(j["mc_ratios"], Reader::child(base, "mc_ratios"));
    for (std::size_t i = 0; i < g.mc_ratios.size(); ++i)
      if (!(g.mc_ratios[i] >= 1.0))
        rd.fail(Path{"geometry", "mc_ratios", std::to_string(i)}, "aspect ratios must be >= 1");
  }
  if (j.contains("mc_samples")) {
    g.mc_samples = rd.count(j["mc_samples"], Reader::child(base, "mc_samples"));
    if (g.mc_samples < 1000) rd.fail(Reader::child(base, "mc_samples"), "'mc_samples' must be >= 1000");
  }
  return g;
}

SpectrumSettings read_spectrum(const Reader& rd, const nlohmann::json& j) {
  const Path base{"spectrum"};
  rd.allow(j, base, {"provider", "omega_points", "t_max_au", "t_points"});
  SpectrumSettings s;
  if (j.contains("provider")) s.provider = rd.text(j["provider"], Reader::child(base, "provider"));
  if (j.contains("omega_points")) {
    s.omega_points = rd.count(j["omega_points"], Reader::child(base, "omega_points"));
    if (s.omega_points < 512) rd.fail(Reader::child(base, "omega_points"), "'omega_points' must be >= 512");
  }
  if (j.contains("t_max_au")) {
    s.t_max_au = rd.number(j["t_max_au"], Reader::child(base, "t_max_au"));
    if (!(s.t_max_au > 0.0)) rd.fail(Reader::child(base, "t_max_au"), "'t_max_au' must be positive");
  }
  if (j.contains("t_points")) {
    s.t_points = rd.count(j["t_points"], Reader::child(base, "t_points"));
    if (s.t_points < 3 || s.t_points % 2 == 0)
      rd.fail(Reader::child(base, "t_points"), "'t_points' must be odd and >= 3");
  }
  return s;
}

OutputSettings read_outputs(const Reader& rd, const nlohmann::json& j) {
  const Path base{"outputs"};
  rd.allow(j, base, {"fig_s1", "fig2", "spectrum", "rates", "repro_table"});
  OutputSettings o;
  auto name = [&](const char* key, std::string& dst) {
    if (!j.contains(key)) return;
    const auto& v = j[key];
    if (v.is_null()) {
      dst.clear();
      return;
    }
    dst = rd.text(v, Reader::child(base, key));
    if (dst.find('/') != std::string::npos || dst.find('\\') != std::string::npos || dst == "." || dst == "..")
      rd.fail(Reader::child(base, key), std::string("'") + key + "' must be a plain file name");
  };
  name("fig_s1", o.fig_s1);
  name("fig2", o.fig2);
  name("spectrum", o.spectrum);
  name("repro_table", o.repro_table);
  if (j.contains("rates")) {
    if (!j["rates"].is_boolean()) rd.fail(Reader::child(base, "rates"), "'rates' must be true or false");
    o.rates = j["rates"].get<bool>();
  }
  return o;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << content;
  if (!f) throw ConfigError("cannot write " + path.string());
}

// Numerical failures are tagged with the operation that raised them.
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
auto stage(const char* op, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const ConvergenceError& e) {
    throw NumericalFailure(std::string(op) + ": " + e.what());
  } catch (const std::domain_error& e) {
    throw NumericalFailure(std::string(op) + ": " + e.what());
  } catch (const NoLobeError& e) {
    throw NumericalFailure(std::string(op) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(op) + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw NumericalFailure(std::string(op) + ": " + e.what());
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const TextPosition p = position_of(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ConfigError(std::string("JSON parse error: ") + e.what(), p.line, p.column);
  }
  const Reader rd(text);
  rd.allow(j, {}, {"name", "species", "seed", "geometry", "spectrum", "schemes", "outputs"});
  Scenario s;
  if (!j.contains("name")) throw ConfigError("scenario needs a 'name'", 1, 1);
  s.name = rd.text(j["name"], {"name"});
  if (j.contains("species")) {
    s.species = rd.text(j["species"], {"species"});
    try {
      species(s.species);
    } catch (const std::invalid_argument& e) {
      rd.fail({"species"}, e.what());
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) rd.fail({"seed"}, "'seed' must be a non-negative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("geometry")) s.geometry = read_geometry(rd, j["geometry"]);
  if (j.contains("spectrum")) s.spectrum = read_spectrum(rd, j["spectrum"]);
  if (j.contains("outputs")) s.outputs = read_outputs(rd, j["outputs"]);
  if (j.contains("schemes")) {
    const auto& sj = j["schemes"];
    if (!sj.is_object()) rd.fail({"schemes"}, "'schemes' must be an object keyed by scheme name");
    for (const auto& [name, body] : sj.items()) {
      SchemeConfig base;
      try {
        base.scheme = scheme_from_string(name);
      } catch (const ConfigError& e) {
        rd.fail({"schemes", name}, e.what());
      }
      base.species = s.species;
      SchemeConfig c = scheme_config_from_json(text, {"schemes", name}, base);
      if (c.scheme != base.scheme) rd.fail({"schemes", name, "scheme"}, "'scheme' disagrees with its key");
      s.schemes.push_back(std::move(c));
    }
  }
  if (s.geometry.aspect_ratios.empty()) s.geometry.aspect_ratios = log_spaced_ratios(1.0, 148.0, 25);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_scenario(ss.str());
}

ScenarioStatus run_scenario(const std::string& path, const std::string& out_dir) {
  Scenario s;
  try {
    s = load_scenario(path);
  } catch (const ConfigError& e) {
    std::string msg = path + ":";
    if (e.line() > 0) msg += std::to_string(e.line()) + ":" + std::to_string(e.column()) + ":";
    return {2, msg + " " + e.what(), {}};
  }
  return run_scenario(s, out_dir);
}

ScenarioStatus run_scenario(const Scenario& s, const std::string& out_dir) {
  ScenarioStatus status;
  try {
    namespace fs = std::filesystem;
    const fs::path dir(out_dir.empty() ? "." : out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
    auto emit = [&](const std::string& name, const std::string& content) {
      write_file(dir / name, content);
      status.written.push_back((dir / name).string());
    };

    if (!s.outputs.fig_s1.empty()) {
      std::vector<ThetaPoint> pts = stage(
          "theta_curve", [&] { return theta_curve(s.geometry.aspect_ratios, s.geometry.rel_tol, s.geometry.transport); });
      for (double r : s.geometry.mc_ratios) {
        const auto mc = stage("theta_factor_mc", [&] {
          return theta_factor_mc(Spheroid::from_ratio(r), s.geometry.mc_samples, s.seed, s.geometry.transport);
        });
        pts.push_back({r, mc.theta, "mc", mc.standard_error});
      }
      emit(s.outputs.fig_s1, theta_curve_csv(pts));
    }

    if (!s.outputs.fig2.empty() || !s.outputs.spectrum.empty()) {
      const SpeciesData sp = species(s.species);
      const ProviderPtr provider = stage("make_provider", [&] { return make_provider(s.spectrum.provider, sp); });
      auto spectrum = stage("spectral_amplitude", [&] {
        return std::make_shared<const BiphotonSpectrum>(
            spectral_amplitude(*provider, gauss_legendre_grid(provider->delta_eg(), s.spectrum.omega_points)));
      });
      if (!s.outputs.spectrum.empty()) emit(s.outputs.spectrum, spectrum_csv(*spectrum));
      if (!s.outputs.fig2.empty()) {
        const CorrelationSeries c = stage("correlation_function", [&] {
          return correlation_function(spectrum,
                                      symmetric_time_grid(Time::from_au(s.spectrum.t_max_au), s.spectrum.t_points));
        });
        emit(s.outputs.fig2, correlation_csv(c));
      }
    }

    if (s.outputs.rates)
      for (const SchemeConfig& c : s.schemes) {
        const RateReport r = stage("compute_report", [&] { return compute_report(c); });
        emit("rates_" + to_string(c.scheme) + ".json", to_json(r));
      }

    if (!s.outputs.repro_table.empty()) {
      ReproOptions o;
      o.seed = s.seed;
      o.mc_samples = s.geometry.mc_samples;
      const ReproTable t = repro_report(o);
      emit(s.outputs.repro_table, t.to_json());
    }
    status.message = "scenario '" + s.name + "': wrote " + std::to_string(status.written.size()) + " files";
  } catch (const ConfigError& e) {
    status.exit_code = 2;
    status.message = e.what();
  } catch (const NumericalFailure& e) {
    status.exit_code = 3;
    status.message = e.what();
  } catch (const std::exception& e) {
    status.exit_code = 3;
    status.message = std::string("unexpected failure: ") + e.what();
  }
  return status;
}

}  // namespace attopair
