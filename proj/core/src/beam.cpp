#include "attopair/beam.hpp"

#include <cmath>
#include <stdexcept>

namespace attopair {

using constants::c_au;
using constants::pi;

ElectricField intensity_to_field(Intensity intensity) {
  if (intensity.au() < 0.0) throw std::invalid_argument("intensity must be non-negative");
  return ElectricField::from_au(std::sqrt(8.0 * pi * intensity.au() / c_au));
}

Intensity field_to_intensity(ElectricField field) {
  return Intensity::from_au(c_au * field.au() * field.au() / (8.0 * pi));
}

PhotonFlux photon_flux(Intensity intensity, Energy photon_energy, Length spot_diameter) {
  if (!(intensity.au() > 0.0) || !(photon_energy.au() > 0.0) || !(spot_diameter.au() > 0.0))
    throw std::invalid_argument("photon_flux: inputs must be positive");
  const double d_cm = spot_diameter.in(units::centimeter);
  const double area_cm2 = pi * d_cm * d_cm / 4.0;
  const double power_w = intensity.in(units::watt_per_cm2) * area_cm2;
  const double photon_j = photon_energy.in(units::joule);
  const double photons_per_s = power_w / photon_j;
  return PhotonFlux{Rate::from(photons_per_s, units::per_second), photons_per_s / area_cm2};
}

NumberDensity ideal_gas_density(Pressure pressure, Temperature temperature) {
  if (!(pressure.au() >= 0.0) || !(temperature.au() > 0.0))
    throw std::invalid_argument("ideal_gas_density: need p >= 0 and T > 0");
  // In atomic units k_B = 1.
  return NumberDensity::from_au(pressure.au() / temperature.au());
}

double focal_volume_cm3(Length spot_diameter, Length path_length) {
  if (spot_diameter.au() < 0.0 || path_length.au() < 0.0)
    throw std::invalid_argument("focal volume: lengths must be non-negative");
  const double r = spot_diameter.in(units::centimeter) / 2.0;
  return pi * r * r * path_length.in(units::centimeter);
}

double atoms_in_focal_volume(Pressure pressure, Temperature temperature, Length spot_diameter,
                             Length path_length) {
  return atoms_in_focal_volume(ideal_gas_density(pressure, temperature), spot_diameter, path_length);
}

double atoms_in_focal_volume(NumberDensity density, Length spot_diameter, Length path_length) {
  if (density.au() < 0.0) throw std::invalid_argument("number density must be non-negative");
  return density.in(units::per_cm3) * focal_volume_cm3(spot_diameter, path_length);
}

}  // namespace attopair
