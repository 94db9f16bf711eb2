#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "attopair/cavity.hpp"
#include "attopair/csv.hpp"
#include "attopair/quadrature.hpp"
#include "attopair/registry.hpp"
#include "attopair/repro.hpp"
#include "attopair/scenario.hpp"
#include "attopair/schemes.hpp"
#include "attopair/spectrum.hpp"

using namespace attopair;

namespace {

constexpr int kOk = 0;
constexpr int kConfig = 2;
constexpr int kNumerical = 3;
constexpr int kAcceptance = 4;

// ATTOPAIR_OUT_DIR moves relative output paths; absolute paths are kept.
std::filesystem::path output_path(const std::string& name) {
  std::filesystem::path p(name);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("ATTOPAIR_OUT_DIR"); dir && *dir) return std::filesystem::path(dir) / p;
  return p;
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") {
    std::cout << content;
    return;
  }
  const auto path = output_path(out);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << content;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::shared_ptr<const BiphotonSpectrum> build_spectrum(const std::string& sp_name, const std::string& provider,
                                                       std::size_t points) {
  const SpeciesData sp = species(sp_name);
  const ProviderPtr p = make_provider(provider, sp);
  return std::make_shared<const BiphotonSpectrum>(spectral_amplitude(*p, gauss_legendre_grid(p->delta_eg(), points)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bi-photon source modeling: cavity geometry, spectra, lifetimes and rate budgets"};
  app.require_subcommand(1);

  // theta
  double ratio = 1.0;
  std::size_t mc = 0, nested = 0;
  std::uint64_t seed = 42;
  std::string transport = "mirror";
  double rel_tol = 1e-9;
  unsigned workers = 0;
  auto* theta = app.add_subcommand("theta", "Geometry factor for one aspect ratio (CSV: ratio,theta,method,stderr)");
  theta->add_option("--ratio", ratio, "Aspect ratio a/b (>= 1)")->check(CLI::Range(1.0, 1e6));
  theta->add_option("--mc", mc, "Also run the Monte-Carlo oracle with N samples");
  theta->add_option("--nested", nested, "Also evaluate the nested 4D rule with N theta nodes per panel");
  theta->add_option("--seed", seed, "Monte-Carlo seed");
  theta->add_option("--workers", workers, "Monte-Carlo threads (0 = all cores)");
  theta->add_option("--transport", transport, "mirror | right-handed");
  theta->add_option("--rel-tol", rel_tol, "Quadrature relative tolerance");

  // theta-curve
  double rmin = 1.0, rmax = 148.0;
  std::size_t points = 25;
  std::string out;
  auto* curve = app.add_subcommand("theta-curve", "Theta over log-spaced aspect ratios (CSV)");
  curve->add_option("--min", rmin, "Smallest aspect ratio");
  curve->add_option("--max", rmax, "Largest aspect ratio");
  curve->add_option("--points", points, "Number of ratios");
  curve->add_option("--transport", transport, "mirror | right-handed");
  curve->add_option("--rel-tol", rel_tol, "Quadrature relative tolerance");
  curve->add_option("--out", out, "Output CSV (default stdout)");

  // spectrum / correlation / lifetime
  std::string sp_name = "He", provider = "pole";
  std::size_t omega_points = 2048, t_points = 4097;
  double t_max = 40.0, scale = 1.0;
  auto* spectrum = app.add_subcommand("spectrum", "Bi-photon spectral amplitude (CSV: omega_ev,amplitude,amplitude_sq)");
  auto* corr = app.add_subcommand("correlation", "Time correlation C(t) (CSV: t_au,t_s,re,im,abs)");
  auto* life = app.add_subcommand("lifetime", "Two-photon decay rate and lifetime");
  for (auto* sc : {spectrum, corr, life}) {
    sc->add_option("--species", sp_name, "Species name or alias (He, Ne8+, He-like(Z=7))");
    sc->add_option("--provider", provider, "flat | pole | tabulated:<file>");
  }
  for (auto* sc : {spectrum, corr}) {
    sc->add_option("--omega-points", omega_points, "Gauss-Legendre nodes on [0, delta_eg]");
    sc->add_option("--out", out, "Output CSV (default stdout)");
  }
  corr->add_option("--tmax-au,--t-max", t_max, "Half-width of the time grid (a.u.)");
  corr->add_option("--t-points", t_points, "Time samples (odd)");
  life->add_option("--scale", scale, "Hydrogenic scaling s (energies x s^2)");

  // rates
  std::string scheme_name, config_path;
  auto* rates = app.add_subcommand("rates", "Rate budget for one scheme (JSON report)");
  rates->add_option("scheme", scheme_name, "narrowband-4photon | broadband-4photon | sequential | scrap | etpa")
      ->required();
  rates->add_option("--config", config_path, "Scheme config JSON (defaults otherwise)");
  rates->add_option("--out", out, "Output JSON (default stdout)");

  // repro
  bool strict = false, as_json = false;
  std::size_t mc_samples = 1'000'000;
  auto* repro = app.add_subcommand("repro", "Recompute every tabulated claim");
  repro->add_flag("--strict", strict, "Exit 4 when any claim fails");
  repro->add_flag("--json", as_json, "Machine-readable output");
  repro->add_option("--seed", seed, "Monte-Carlo seed");
  repro->add_option("--mc-samples", mc_samples, "Monte-Carlo samples per aspect ratio");
  repro->add_option("--workers", workers, "Monte-Carlo threads (0 = all cores)");
  repro->add_option("--out", out, "Write the table to a file as well");

  // run
  std::string scenario_path, out_dir;
  auto* run = app.add_subcommand("run", "Run a scenario file and write all artifacts");
  run->add_option("scenario", scenario_path, "Scenario JSON")->required();
  run->add_option("--out-dir", out_dir, "Output directory (default $ATTOPAIR_OUT_DIR or .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*theta) {
      const auto tr = polarization_transport_from_string(transport);
      const Spheroid s = Spheroid::from_ratio(ratio);
      std::vector<ThetaPoint> pts{{ratio, theta_factor_quadrature(s, rel_tol, tr).theta, "quadrature", 0.0}};
      if (nested > 0) pts.push_back({ratio, theta_factor_nested(s, nested, 2 * nested, tr), "nested", 0.0});
      if (mc > 0) {
        const auto r = theta_factor_mc(s, mc, seed, tr, workers);
        pts.push_back({ratio, r.theta, "mc", r.standard_error});
      }
      emit("", theta_curve_csv(pts));
    } else if (*curve) {
      const auto tr = polarization_transport_from_string(transport);
      emit(out, theta_curve_csv(theta_curve(log_spaced_ratios(rmin, rmax, points), rel_tol, tr)));
    } else if (*spectrum) {
      emit(out, spectrum_csv(*build_spectrum(sp_name, provider, omega_points)));
    } else if (*corr) {
      const auto spec = build_spectrum(sp_name, provider, omega_points);
      const CorrelationSeries c = correlation_function(spec, symmetric_time_grid(Time::from_au(t_max), t_points));
      emit(out, correlation_csv(c));
      const CorrelationTime w = correlation_time(c);
      std::cerr << "carrier_lobe_s=" << format_double(w.carrier_lobe.in(units::second))
                << " envelope_lobe_s=" << format_double(w.envelope_lobe.in(units::second)) << "\n";
    } else if (*life) {
      ProviderPtr p = make_provider(provider, species(sp_name));
      if (scale != 1.0) p = provider_scaled(p, scale);
      const DecayRate d = two_photon_decay_rate(*p);
      std::cout << "species=" << sp_name << "\n"
                << "provider=" << p->metadata().kind << "\n"
                << "rate_per_s=" << format_double(d.rate.in(units::per_second)) << "\n"
                << "lifetime_s=" << format_double(d.lifetime.in(units::second)) << "\n"
                << "spectral_integral_au=" << format_double(d.spectral_integral) << "\n";
    } else if (*rates) {
      const SchemeId id = scheme_from_string(scheme_name);
      SchemeConfig c;
      if (!config_path.empty()) {
        const std::string text = read_file(config_path);
        try {
          c = scheme_config_from_json(text);
        } catch (const ConfigError& e) {
          std::string where = config_path + ":";
          if (e.line() > 0) where += std::to_string(e.line()) + ":" + std::to_string(e.column()) + ":";
          throw ConfigError(where + " " + e.what());
        }
      }
      c.scheme = id;
      emit(out, to_json(compute_report(c)));
    } else if (*repro) {
      ReproOptions o;
      o.seed = seed;
      o.mc_samples = mc_samples;
      o.workers = workers;
      const ReproTable t = repro_report(o);
      emit("", as_json ? t.to_json() : t.pretty());
      if (!out.empty()) emit(out, as_json ? t.to_json() : t.pretty());
      if (strict && !t.all_pass()) return kAcceptance;
    } else if (*run) {
      std::string dir = out_dir;
      if (dir.empty())
        if (const char* env = std::getenv("ATTOPAIR_OUT_DIR"); env && *env) dir = env;
      const ScenarioStatus st = run_scenario(scenario_path, dir.empty() ? "." : dir);
      (st.exit_code == 0 ? std::cout : std::cerr) << st.message << "\n";
      for (const auto& f : st.written) std::cout << "  " << f << "\n";
      return st.exit_code;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what();
    if (e.line() > 0) std::cerr << " (line " << e.line() << ", column " << e.column() << ")";
    std::cerr << "\n";
    return kConfig;
  } catch (const ConvergenceError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const NoLobeError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  }
  return kOk;
}
