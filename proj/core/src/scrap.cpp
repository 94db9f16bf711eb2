#include <cmath>

#include "attopair/quadrature.hpp"
#include "attopair/schemes.hpp"

namespace attopair {

using constants::pi;

namespace {
void check(const SweepParameters& p) {
  if (!(p.bandwidth > 0.0) || !(p.duration > 0.0))
    throw std::invalid_argument("Landau-Zener sweep needs bandwidth and duration > 0");
}
double gamma_of(const SweepParameters& p) { return std::sqrt(p.bandwidth / (4.0 * pi * p.duration)); }
double omega_sq(const SweepParameters& p) {
  return p.omega_eg * p.omega_eg + (p.static_detuning ? 0.25 * p.bandwidth * p.bandwidth : 0.0);
}
}  // namespace

double lz_leakage_rate(double t, const SweepParameters& p) {
  check(p);
  const double g = gamma_of(p);
  const double detuning = t * p.bandwidth / p.duration;
  return omega_sq(p) * g / (detuning * detuning + 0.25 * g * g);
}

double lz_exponent(const SweepParameters& p, SweepWindow window) {
  check(p);
  const double g = gamma_of(p);
  const double w2 = omega_sq(p);
  if (window == SweepWindow::half) return w2 * (2.0 * p.duration / p.bandwidth) * std::atan(2.0 * p.bandwidth / g);
  return w2 * (4.0 * p.duration / p.bandwidth) * std::atan(p.bandwidth / g);
}

double lz_exponent_numeric(const SweepParameters& p, SweepWindow window) {
  check(p);
  const double lo = window == SweepWindow::half ? 0.0 : -0.5 * p.duration;
  const double hi = window == SweepWindow::half ? p.duration : 0.5 * p.duration;
  // Split at the Lorentzian centre so the peak sits on a breakpoint.
  const double width = gamma_of(p) * p.duration / p.bandwidth;
  std::vector<double> pts{lo};
  for (double m : {-4.0, -1.0, 0.0, 1.0, 4.0}) {
    const double x = m * width;
    if (x > pts.back() && x < hi) pts.push_back(x);
  }
  pts.push_back(hi);
  auto res = integrate_adaptive<1>(
      [&](double t) { return std::array<double, 1>{lz_leakage_rate(t, p)}; },
      std::span<const double>(pts), 1e-13);
  if (!res.converged) throw ConvergenceError("lz_exponent_numeric", res.value[0], res.error);
  return res.value[0];
}

ScrapResult scrap_transfer_probability(const SchemeConfig& c) {
  validate(c);
  const SpeciesData sp = species(c.species);
  const RabiUnits units_conv = c.rabi_units == "physical" ? RabiUnits::physical : RabiUnits::tabulated;
  const double omega_au = four_photon_rabi_au(Intensity::from(c.pump_intensity_w_cm2, units::watt_per_cm2), sp);

  SweepParameters p;
  p.omega_eg = rabi_per_second(omega_au, units_conv);
  // The tabulated reading uses the bandwidth in Hz as a rate; the physical
  // one converts it to rad/s.
  p.bandwidth = units_conv == RabiUnits::tabulated ? c.sweep_bandwidth_hz : 2.0 * pi * c.sweep_bandwidth_hz;
  p.duration = c.pulse_duration_fs * 1e-15;

  ScrapResult r;
  r.omega_eg_per_s = p.omega_eg;
  r.exponent_half = lz_exponent(p, SweepWindow::half);
  r.exponent_symmetric = lz_exponent(p, SweepWindow::symmetric);
  const double x = c.sweep_window == "symmetric" ? r.exponent_symmetric : r.exponent_half;
  r.probability = -std::expm1(-x);
  return r;
}

double scrap_biphoton_rate(double fraction, double atoms, double rep_rate) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw std::invalid_argument("excitation fraction in [0, 1]");
  if (atoms < 0.0 || rep_rate < 0.0) throw std::invalid_argument("atoms and repetition rate >= 0");
  return fraction * atoms * rep_rate;
}

}  // namespace attopair
