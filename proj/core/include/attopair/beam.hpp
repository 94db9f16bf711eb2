#pragma once

#include "attopair/units.hpp"

namespace attopair {

/// Cycle-peak field amplitude E0 = sqrt(8 pi I / c) (Gaussian units, a.u.).
/// 1e14 W/cm^2 maps to 0.0534 a.u. Throws std::invalid_argument for I < 0.
ElectricField intensity_to_field(Intensity intensity);

/// Inverse of intensity_to_field.
Intensity field_to_intensity(ElectricField field);

struct PhotonFlux {
  Rate photons;          // photons per unit time through the spot
  double per_area_cm2_s; // photons cm^-2 s^-1
};

/// Photons per second carried by a flat-top beam of diameter d:
/// I * (pi d^2 / 4) / (hbar omega).
PhotonFlux photon_flux(Intensity intensity, Energy photon_energy, Length spot_diameter);

/// Ideal-gas number density p / (k_B T).
NumberDensity ideal_gas_density(Pressure pressure, Temperature temperature);

/// Cylinder volume pi (d/2)^2 L, in cm^3.
double focal_volume_cm3(Length spot_diameter, Length path_length);

/// Atom count in the focal cylinder for an ideal gas at (p, T).
double atoms_in_focal_volume(Pressure pressure, Temperature temperature, Length spot_diameter,
                             Length path_length);

/// Atom count in the focal cylinder for a given number density.
double atoms_in_focal_volume(NumberDensity density, Length spot_diameter, Length path_length);

}  // namespace attopair
