#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "attopair/registry.hpp"
#include "attopair/units.hpp"

namespace attopair {

struct ProviderInfo {
  std::string species;
  std::string kind;           // "flat", "pole", "tabulated", "scaled(...)"
  std::string normalization;  // human-readable description of the absolute scale
};

/// Source of the intermediate-state sum
///   S(w) = sum_j X_j [1/(w - D_ej) + 1/(D_jg - w)],  X_j = <g|r|j>.<j|r|e>,
/// with D_ej + D_jg = D_eg, so S(w) = S(D_eg - w).
class DipoleChainProvider {
 public:
  virtual ~DipoleChainProvider() = default;

  virtual double chain_sum(Energy omega) const = 0;

  /// Absorber-side chain sum_j X_j / (w - D_jg) for a ground-state absorber
  /// taking the first photon. Providers without it throw std::logic_error.
  virtual double absorption_chain(Energy omega) const;

  virtual Energy delta_eg() const = 0;

  /// Energies (a.u.) at which chain_sum diverges.
  virtual std::vector<double> poles() const = 0;

  /// True when chain_sum is in absolute atomic units.
  virtual bool calibrated() const = 0;

  virtual ProviderInfo metadata() const = 0;
};

using ProviderPtr = std::shared_ptr<const DipoleChainProvider>;

class ProviderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Constant S; not calibrated.
ProviderPtr provider_flat(const SpeciesData& species, double value = 1.0);

/// Single intermediate 1s2p state. The chain is fixed from the oscillator
/// strengths through f = 2 D |<b|z|a>|^2 and the isotropic sum over the three
/// magnetic sublevels, X = 3 z_gj z_je.
ProviderPtr provider_pole(const SpeciesData& species);

/// Reduced chain element X used by provider_pole.
double pole_chain_product(const SpeciesData& species);

/// Multi-state provider loaded from JSON:
///   {"schema_version": 1, "species": "He", "delta_eg_ev": 20.62,
///    "states": [{"name": "1s2p", "energy_ev": 21.22, "chain_au": 3.63}]}
/// Energies are measured from the ground state.
ProviderPtr provider_tabulated(const std::string& json_text);

/// Hydrogenic transform: energies x s^2, dipoles x 1/s, so
/// S'(w) = S(w / s^2) / s^4. With s = Z'/Z the decay rate scales as s^6.
ProviderPtr provider_scaled(ProviderPtr base, double s);

/// "flat", "pole" or "tabulated:<path>". Throws ProviderError.
ProviderPtr make_provider(const std::string& kind, const SpeciesData& species);

/// Omega grid on [0, D_eg] with integration weights.
struct FrequencyGrid {
  std::vector<double> omega;  // a.u.
  std::vector<double> weight;
};

/// Gauss-Legendre nodes on [0, delta] (default 2048 points).
FrequencyGrid gauss_legendre_grid(Energy delta, std::size_t n = 2048);

/// Uniform grid including both endpoints, composite Simpson weights (n odd).
FrequencyGrid uniform_grid(Energy delta, std::size_t n);

class PoleInGridError : public std::domain_error {
 public:
  PoleInGridError(double pole_au);
  double pole() const { return pole_; }

 private:
  double pole_;
};

struct BiphotonSpectrum {
  std::string species;
  std::string provider;
  Energy delta_eg;
  FrequencyGrid grid;
  std::vector<double> amplitude;     // [w (D - w)]^3 S(w)
  std::vector<double> amplitude_sq;  // [w (D - w)]^3 S(w)^2
};

/// Requires >= 512 grid points inside [0, D_eg]. Throws PoleInGridError when
/// a provider pole falls inside the sampled range.
BiphotonSpectrum spectral_amplitude(const DipoleChainProvider& provider, const FrequencyGrid& grid);

struct CorrelationSeries {
  std::vector<double> t_au;
  std::vector<std::complex<double>> value;
  bool normalized = true;  // value(0) = 1
  double norm = 1.0;       // unnormalized C(0)
  std::shared_ptr<const BiphotonSpectrum> spectrum;

  double t_seconds(std::size_t i) const;

  /// Direct evaluation at any t (normalized like `value`).
  std::complex<double> evaluate(double t_au) const;
};

class UnderResolvedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Uniform time grid on [-t_max, t_max] with n points (n odd puts t = 0 on
/// the grid).
std::vector<double> symmetric_time_grid(Time t_max, std::size_t n);

/// C(t) = int dw f(w) e^{i w t} / int dw f(w) over the amplitude-level
/// spectrum. Requires a grid symmetric about 0 and an omega grid fine enough
/// to sample e^{i w t_max}; throws UnderResolvedError otherwise.
CorrelationSeries correlation_function(std::shared_ptr<const BiphotonSpectrum> spectrum,
                                       const std::vector<double>& t_grid_au);

struct CorrelationTime {
  /// Primary value: width between the first zeros of Re C on either side of
  /// t = 0 (the central carrier lobe).
  Time carrier_lobe;
  /// Width between the first local minima of |C| on either side of t = 0.
  Time envelope_lobe;
};

class NoLobeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CorrelationTime correlation_time(const CorrelationSeries& series);

struct DecayRate {
  Rate rate;
  Time lifetime;
  double spectral_integral = 0.0;  // int w^3 (D-w)^3 S^2 dw, a.u.
};

/// Gamma = 4 / (27 pi c^6) int_0^D w^3 (D - w)^3 S(w)^2 dw: golden rule with
/// the two-photon mode density, the 1/9 isotropic polarization average and
/// 1/2 for identical photons. Throws ProviderError when uncalibrated.
DecayRate two_photon_decay_rate(const DipoleChainProvider& provider);

/// Prefactor 4 / (27 pi c^6) in a.u.
double decay_rate_prefactor();

/// Normalized relative-angle density (3/8)(1 + cos^2 t) sin t on [0, pi].
double angular_distribution(double theta_rel);

}  // namespace attopair
