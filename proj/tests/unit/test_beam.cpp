#include <gtest/gtest.h>

#include <cmath>

#include "attopair/beam.hpp"

using namespace attopair;

namespace {

// Oracle: E0 = sqrt(8 pi I / c) with I expressed in Eh / (t_au a0^2).
double field_oracle(double w_cm2) {
  const double eh_j = 4.3597447222071e-18, t_s = 2.4188843265857e-17, a0_cm = 5.29177210903e-9;
  const double c = 137.035999084;
  const double i_au = w_cm2 / (eh_j / t_s / (a0_cm * a0_cm));
  return std::sqrt(8.0 * M_PI * i_au / c);
}

Intensity wcm2(double v) { return Intensity::from(v, units::watt_per_cm2); }

}  // namespace

TEST(Beam, FieldAtReferenceIntensity) {
  const double e0 = intensity_to_field(wcm2(1e14)).au();
  EXPECT_NEAR(e0, field_oracle(1e14), 1e-12);
  EXPECT_NEAR(e0 / 0.053, 1.0, 0.02);
}

TEST(Beam, FieldScalesAsSquareRoot) {
  EXPECT_EQ(intensity_to_field(wcm2(0.0)).au(), 0.0);
  const double r = intensity_to_field(wcm2(4e14)).au() / intensity_to_field(wcm2(1e14)).au();
  EXPECT_NEAR(r, 2.0, 1e-14);
  EXPECT_THROW(intensity_to_field(wcm2(-1.0)), std::invalid_argument);
  EXPECT_NEAR(field_to_intensity(intensity_to_field(wcm2(3e13))).in(units::watt_per_cm2), 3e13, 3e13 * 1e-13);
}

TEST(Beam, PumpPhotonFlux) {
  const PhotonFlux f = photon_flux(wcm2(1e14), Energy::from(5.155, units::ev), Length::from(100.0, units::micrometer));
  const double oracle = 1e14 * M_PI * 0.005 * 0.005 / (5.155 * 1.602176634e-19);
  EXPECT_NEAR(f.photons.in(units::per_second) / oracle, 1.0, 1e-9);
  // quoted as ~1e28
  EXPECT_GT(f.photons.in(units::per_second), 3e27);
  EXPECT_LT(f.photons.in(units::per_second), 3e28);
}

TEST(Beam, InfraredPhotonFlux) {
  // 1e12 W/cm2 at 0.602 eV through a 100 um spot carries 8.14e26 photons/s; the
  // ~8e28 sometimes quoted for this beam needs a 1 mm spot.
  const double flux = photon_flux(wcm2(1e12), Energy::from(0.602, units::ev), Length::from(100.0, units::micrometer))
                          .photons.in(units::per_second);
  const double oracle = 1e12 * M_PI * 0.005 * 0.005 / (0.602 * 1.602176634e-19);
  EXPECT_NEAR(flux / oracle, 1.0, 1e-9);
  EXPECT_NEAR(flux, 8.14e26, 0.01e26);
  const double wide = photon_flux(wcm2(1e12), Energy::from(0.602, units::ev), Length::from(1.0, units::millimeter))
                          .photons.in(units::per_second);
  EXPECT_NEAR(wide / 8e28, 1.0, 0.05);
}

TEST(Beam, FocalAtomsFromDensity) {
  const Length d = Length::from(100.0, units::micrometer);
  const NumberDensity n = NumberDensity::from(1e19, units::per_cm3);
  const double atoms = atoms_in_focal_volume(n, d, Length::from(1.0, units::millimeter));
  EXPECT_NEAR(atoms, 1e19 * M_PI * 0.005 * 0.005 * 0.1, 1e3);
  EXPECT_NEAR(atoms / 7.8e13, 1.0, 0.10);
  EXPECT_NEAR(atoms_in_focal_volume(n, d, Length::from(2.0, units::millimeter)) / atoms, 2.0, 1e-14);
  EXPECT_EQ(atoms_in_focal_volume(n, d, Length::from_au(0.0)), 0.0);
}

TEST(Beam, IdealGasFocalAtoms) {
  const Pressure p = Pressure::from(1.0, units::bar);
  const Temperature t = Temperature::from(293.0, units::kelvin);
  const double n = ideal_gas_density(p, t).in(units::per_cm3);
  EXPECT_NEAR(n, 1e5 / (1.380649e-23 * 293.0) * 1e-6, 1e14);
  const Length d = Length::from(100.0, units::micrometer);
  const double one = atoms_in_focal_volume(p, t, d, Length::from(1.0, units::millimeter));
  const double two = atoms_in_focal_volume(p, t, d, Length::from(2.0, units::millimeter));
  EXPECT_NEAR(two / one, 2.0, 1e-14);
  EXPECT_NEAR(one, n * M_PI * 0.005 * 0.005 * 0.1, one * 1e-12);
  EXPECT_EQ(atoms_in_focal_volume(p, t, d, Length::from_au(0.0)), 0.0);
}
