#include "attopair/schemes.hpp"

#include <cmath>

#include "attopair/quadrature.hpp"

namespace attopair {

using constants::c_au;
using constants::pi;

double four_photon_rabi_au(ElectricField field, double d4_au) {
  const double half = 0.5 * field.au();
  return half * half * half * half * d4_au;
}

double four_photon_rabi_au(Intensity intensity, const SpeciesData& species) {
  if (!species.d4_eg_au) throw std::invalid_argument(species.name + " has no four-photon matrix element");
  return four_photon_rabi_au(intensity_to_field(intensity), *species.d4_eg_au);
}

double rabi_per_second(double omega_au, RabiUnits convention) {
  const double rad_per_s = AngularFrequency::from_au(omega_au).in(units::rad_per_s);
  return convention == RabiUnits::tabulated ? 2.0 * pi * rad_per_s : rad_per_s;
}

Rate four_photon_rate(ElectricField field, double d4_au, double lineshape_factor_au) {
  const double omega = four_photon_rabi_au(field, d4_au);
  return Rate::from_au(2.0 * pi * lineshape_factor_au * omega * omega);
}

Rate four_photon_rate(Intensity intensity, const SpeciesData& species, double lineshape_factor_au) {
  if (!species.d4_eg_au) throw std::invalid_argument(species.name + " has no four-photon matrix element");
  return four_photon_rate(intensity_to_field(intensity), *species.d4_eg_au, lineshape_factor_au);
}

double absorption_coefficient(int n, Rate rate, NumberDensity density, Intensity intensity,
                              Energy photon_energy) {
  if (n < 1) throw std::invalid_argument("absorption_coefficient: n >= 1");
  const double i = intensity.in(units::watt_per_cm2);
  if (!(i > 0.0)) throw std::invalid_argument("absorption_coefficient: intensity must be positive");
  return n * photon_energy.in(units::joule) * rate.in(units::per_second) * density.in(units::per_cm3) /
         std::pow(i, n);
}

double attenuation_fraction(double i0, double alpha, double length_cm, int n) {
  if (n < 1) throw std::invalid_argument("attenuation_fraction: n >= 1");
  if (i0 < 0.0 || alpha < 0.0 || length_cm < 0.0)
    throw std::invalid_argument("attenuation_fraction: inputs must be non-negative");
  if (n == 1) return -std::expm1(-alpha * length_cm);
  const double m = n - 1.0;
  const double x = m * alpha * length_cm * std::pow(i0, m);
  // 1 - (1 + x)^(-1/m) without cancellation for small x.
  return -std::expm1(-std::log1p(x) / m);
}

Rate one_photon_rate(double f, Intensity intensity, Energy photon_energy, Time lifetime) {
  if (!(photon_energy.au() > 0.0)) throw std::invalid_argument("one_photon_rate: photon energy > 0");
  const double e0 = intensity_to_field(intensity).au();
  return Rate::from_au(pi * std::abs(f) / photon_energy.au() * e0 * e0 * lifetime.au());
}

double steady_state_fraction(Rate r1, Time tau) {
  if (r1.au() < 0.0 || tau.au() < 0.0) throw std::invalid_argument("steady_state_fraction: R1, tau >= 0");
  const double x = 2.0 * r1.au() * tau.au();
  return 0.5 * x / (1.0 + x);
}

double broadband_dilution_flat(Frequency bandwidth, Frequency reference_width) {
  if (!(bandwidth.au() > 0.0) || !(reference_width.au() > 0.0))
    throw std::invalid_argument("bandwidths must be positive");
  return std::min(1.0, reference_width / bandwidth);
}

double broadband_dilution_gaussian(Frequency bandwidth, Frequency reference_width) {
  if (!(bandwidth.au() > 0.0) || !(reference_width.au() > 0.0))
    throw std::invalid_argument("bandwidths must be positive");
  // Gaussian of FWHM delta: the window of width w holds erf(w sqrt(ln 2) / delta).
  return std::erf(reference_width / bandwidth * std::sqrt(std::log(2.0)));
}

double collection_fraction(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("collection_fraction: fraction in [0, 1]");
  if (q == 0.0) return 0.0;
  const double ca = 1.0 - 2.0 * q;
  // Both photons inside the cone u >= ca; the azimuthal average of
  // cos^2(theta_12) is u1^2 u2^2 + (1 - u1^2)(1 - u2^2) / 2.
  static const QuadratureRule unit = gauss_legendre(128, 0.0, 1.0);
  const double span = 1.0 - ca;
  CompensatedSum acc;
  for (std::size_t i = 0; i < unit.size(); ++i) {
    const double u1 = ca + span * unit.nodes[i];
    for (std::size_t j = 0; j < unit.size(); ++j) {
      const double u2 = ca + span * unit.nodes[j];
      const double f = 1.0 + u1 * u1 * u2 * u2 + 0.5 * (1.0 - u1 * u1) * (1.0 - u2 * u2);
      acc.add(unit.weights[i] * unit.weights[j] * span * span * f);
    }
  }
  const double norm = 16.0 * pi * pi * (4.0 / 3.0);
  return 4.0 * pi * pi * acc.value() / norm;
}

EtpaResult etpa_ion_rate(double sigma2, double t_e, double a_e, double photons, double molecules) {
  if (!(sigma2 > 0.0) || !(t_e > 0.0) || !(a_e > 0.0) || photons < 0.0 || molecules < 0.0)
    throw std::invalid_argument("etpa_ion_rate: inputs must be positive");
  EtpaResult r;
  r.sigma_e_cm2 = sigma2 / (a_e * t_e);
  r.per_molecule_rate = r.sigma_e_cm2 * photons / a_e;
  r.ion_rate = r.per_molecule_rate * molecules;
  return r;
}

TransferRate r_trans(double theta_factor, ElectricField field, const SpeciesData& species,
                     const DipoleChainProvider& emitter, const DipoleChainProvider& absorber,
                     double l_exc, double l_abs) {
  if (!species.d4_eg_au) throw std::invalid_argument(species.name + " has no four-photon matrix element");
  const double d = emitter.delta_eg().au();
  if (std::abs(absorber.delta_eg().au() - d) > 1e-12 * d)
    throw ProviderError("r_trans: emitter and absorber disagree on delta_eg");
  if (!emitter.calibrated() || !absorber.calibrated())
    throw ProviderError("r_trans: providers must be calibrated");
  const double overlap = integrate(
      [&](double w) {
        const double x = w * (d - w);
        const Energy e = Energy::from_au(w);
        return x * x * x * absorber.absorption_chain(e) * emitter.chain_sum(e);
      },
      0.0, d, 1e-12);
  const double c3 = c_au * c_au * c_au;
  const double amp_per_e8 = theta_factor / (256.0 * c3 * c3) * (*species.d4_eg_au) * l_exc * overlap;
  TransferRate out;
  out.overlap_integral = overlap;
  out.coefficient = 2.0 * pi * l_abs * amp_per_e8 * amp_per_e8;
  const double e2 = field.au() * field.au();
  out.rate_au = out.coefficient * e2 * e2 * e2 * e2;
  return out;
}

}  // namespace attopair
