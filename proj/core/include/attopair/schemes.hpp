#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "attopair/beam.hpp"
#include "attopair/registry.hpp"
#include "attopair/spectrum.hpp"
#include "attopair/units.hpp"

namespace attopair {

// ---------------------------------------------------------------------------
// Field-driven rates (atomic units unless a unit is named).

/// Four-photon Rabi frequency (E0/2)^4 D4 in a.u. (E0 from intensity).
/// Throws std::invalid_argument when the species has no D4.
double four_photon_rabi_au(Intensity intensity, const SpeciesData& species);
double four_photon_rabi_au(ElectricField field, double d4_au);

/// Rabi frequency expressed per second. `tabulated` multiplies by 2 pi
/// (a.u. angular value read as cycles), which is how the budgets below quote
/// it; `physical` is the plain rad/s conversion.
enum class RabiUnits { tabulated, physical };
double rabi_per_second(double omega_au, RabiUnits convention);

/// R4 = 2 pi L [(E0/2)^4 D4]^2 with the resonance delta replaced by
/// lineshape_factor (a.u. of inverse energy).
Rate four_photon_rate(Intensity intensity, const SpeciesData& species, double lineshape_factor_au = 1.0);
Rate four_photon_rate(ElectricField field, double d4_au, double lineshape_factor_au = 1.0);

/// alpha^(n) = n hbar w R N / I^n in W^(1-n) cm^(2n-3).
double absorption_coefficient(int n, Rate rate, NumberDensity density, Intensity intensity,
                              Energy photon_energy);

/// Fraction of the input intensity absorbed over length L:
/// n = 1: 1 - exp(-alpha L); n > 1: 1 - (1 + (n-1) alpha L I0^(n-1))^(-1/(n-1)).
/// alpha in W^(1-n) cm^(2n-3), I0 in W/cm^2, L in cm.
double attenuation_fraction(double i0_w_cm2, double alpha, double length_cm, int n);

/// R1 = pi |f| / w * E0^2 * L (unit reduced mass), L replacing the delta.
Rate one_photon_rate(double oscillator_strength, Intensity intensity, Energy photon_energy,
                     Time lineshape_lifetime);

/// (1/2)(1 - 1/(1 + 2 R1 tau)).
double steady_state_fraction(Rate r1, Time tau);

/// Flat-top (1/delta over delta) and equal-FWHM Gaussian fractions of the
/// pump spectrum that fall inside a reference window of width ref.
double broadband_dilution_flat(Frequency bandwidth, Frequency reference_width);
double broadband_dilution_gaussian(Frequency bandwidth, Frequency reference_width);

// ---------------------------------------------------------------------------
// Landau-Zener leakage for a linear Stark sweep. Inputs share one
// consistent time unit (seconds below, but any unit works).

struct SweepParameters {
  double omega_eg = 0.0;   // four-photon Rabi frequency
  double bandwidth = 0.0;  // delta
  double duration = 0.0;   // tau_p
  bool static_detuning = true;  // add delta^2/4 to the squared Rabi frequency
};

enum class SweepWindow { half, symmetric };  // [0, tau] or [-tau/2, tau/2]

/// Gamma(t) = W^2 g / (D(t)^2 + g^2/4), g = sqrt(delta / (4 pi tau)),
/// D(t) = t delta / tau, W^2 = omega_eg^2 + delta^2 / 4.
double lz_leakage_rate(double t, const SweepParameters& p);

/// Closed form of the leakage integral over the window.
double lz_exponent(const SweepParameters& p, SweepWindow window);

/// Same integral by adaptive quadrature (oracle for the closed form).
double lz_exponent_numeric(const SweepParameters& p, SweepWindow window);

// ---------------------------------------------------------------------------
// Pair collection, ETPA and the coherent transfer rate.

/// Probability that both photons of a pair land in one cone covering the
/// given fraction of the full solid angle, for the (1 + cos^2) pair density.
double collection_fraction(double solid_angle_fraction);

struct EtpaResult {
  double sigma_e_cm2 = 0.0;
  double per_molecule_rate = 0.0;  // s^-1
  double ion_rate = 0.0;           // s^-1
};

/// sigma_e = sigma2 / (A_e T_e); per-molecule rate = sigma_e * photons / A_e.
EtpaResult etpa_ion_rate(double sigma2_cm4s, double entanglement_time_s, double entanglement_area_cm2,
                         double photon_rate_per_s, double molecules);

/// Coherent excitation-emission-absorption rate in a.u.:
/// 2 pi L_abs |Theta E0^4/(256 c^6) D4 L_exc int [w(D-w)]^3 A(w) S(w) dw|^2.
/// Throws ProviderError when the two providers disagree on delta_eg.
struct TransferRate {
  double rate_au = 0.0;
  double coefficient = 0.0;  // rate / E0^8
  double overlap_integral = 0.0;
};
TransferRate r_trans(double theta_factor, ElectricField field, const SpeciesData& species,
                     const DipoleChainProvider& emitter, const DipoleChainProvider& absorber,
                     double excitation_lineshape_au = 1.0, double absorption_lineshape_au = 1.0);

// ---------------------------------------------------------------------------
// Scenario-level configuration and reports.

enum class SchemeId { narrowband_4photon, broadband_4photon, sequential, scrap, etpa };

std::string to_string(SchemeId id);
SchemeId scheme_from_string(const std::string& name);
std::vector<SchemeId> all_schemes();

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& what, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

/// All physical inputs; defaults are the reference operating points.
struct SchemeConfig {
  SchemeId scheme = SchemeId::narrowband_4photon;
  std::string species = "He";

  // focal geometry and target
  double spot_diameter_um = 100.0;
  double path_length_mm = 1.0;
  double pressure_bar = 1.0;
  double temperature_k = 293.0;
  // Density per bar of pressure; unset falls back to the ideal gas at (p, T).
  std::optional<double> density_per_bar_cm3 = 1e19;
  std::optional<double> number_density_cm3;  // explicit density, overrides the above
  std::optional<double> atoms_in_focus;      // overrides density x volume

  // four-photon pump
  double pump_intensity_w_cm2 = 1e14;
  double pump_photon_energy_ev = 5.155;
  double lineshape_factor_au = 1.0;
  double bandwidth_hz = 5e12;
  double reference_linewidth_hz = 50.0;
  std::string spectral_profile = "flat-top";  // or "gaussian"

  // sequential
  double lamp_photons_per_s = 1e15;
  double lamp_intensity_w_cm2 = 34.0;
  double laser_intensity_w_cm2 = 1e12;
  double laser_photon_energy_ev = 0.602;
  double tau_2p_ns = 2.1;
  double promotion_rate_hz = 1.0;

  // SCRAP
  double pulse_duration_fs = 50.0;
  double sweep_bandwidth_hz = 8.8e12;
  std::string sweep_window = "half";     // or "symmetric"
  std::string rabi_units = "tabulated";  // or "physical"
  double repetition_rate_hz = 1e5;
  double excitation_fraction = 0.01;

  // ETPA
  double sigma2_cm4s = 1e-50;
  double entanglement_time_s = 1e-15;
  double entanglement_area_cm2 = 1e-8;
  double photon_rate_per_s = 1e12;
  std::optional<double> molecules = 1e12;

  double collection_solid_angle_fraction = 0.1;

  friend bool operator==(const SchemeConfig&, const SchemeConfig&) = default;
};

/// Checks positivity and enum-like fields; throws ConfigError.
void validate(const SchemeConfig& c);

/// Strict parse: unknown keys or wrong types throw ConfigError with the
/// line/column of the offending key. Missing keys keep their defaults.
SchemeConfig scheme_config_from_json(const std::string& json_text);
/// Parses the object at `object_path` inside a larger document, starting from
/// `base`; diagnostics point into the full text.
SchemeConfig scheme_config_from_json(const std::string& json_text, const std::vector<std::string>& object_path,
                                     SchemeConfig base);
std::string to_json(const SchemeConfig& c);

/// Atoms in the focal cylinder according to the config.
double focal_atoms(const SchemeConfig& c);

struct ReportEntry {
  std::string key;
  double value = 0.0;
  std::string unit;
  std::string provenance;  // formula used

  friend bool operator==(const ReportEntry&, const ReportEntry&) = default;
};

inline constexpr int kReportSchemaVersion = 1;

struct RateReport {
  int schema_version = kReportSchemaVersion;
  std::string scheme;
  std::string species;
  std::vector<ReportEntry> entries;
  ReportEntry final_rate;
  std::string binding_constraint;
  std::vector<std::string> notes;

  /// Throws std::out_of_range.
  const ReportEntry& at(const std::string& key) const;

  friend bool operator==(const RateReport&, const RateReport&) = default;
};

std::string to_json(const RateReport& r);
RateReport rate_report_from_json(const std::string& json_text);

RateReport biphoton_rate_narrowband(const SchemeConfig& c);
RateReport four_photon_rate_broadband(const SchemeConfig& c);
RateReport biphoton_rate_sequential(const SchemeConfig& c);
RateReport scrap_transfer(const SchemeConfig& c);
RateReport etpa_report(const SchemeConfig& c);

/// Dispatches on c.scheme.
RateReport compute_report(const SchemeConfig& c);

struct ScrapResult {
  double omega_eg_per_s = 0.0;
  double exponent_half = 0.0;
  double exponent_symmetric = 0.0;
  double probability = 0.0;  // for the configured window
};

/// P = 1 - exp(-int Gamma dt) for the configured window and Rabi units.
ScrapResult scrap_transfer_probability(const SchemeConfig& c);

/// fraction x atoms x repetition rate.
double scrap_biphoton_rate(double excitation_fraction, double atoms, double repetition_rate_hz);

}  // namespace attopair
