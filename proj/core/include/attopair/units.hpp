#pragma once

// Dimensioned scalars stored in Hartree atomic units. SI/CGS values appear
// only at the I/O boundary through Unit descriptors.

#include <compare>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace attopair {

namespace constants {
// CODATA 2018.
inline constexpr double hartree_ev = 27.211386245988;
inline constexpr double hartree_j = 4.3597447222071e-18;
inline constexpr double ev_j = 1.602176634e-19;
inline constexpr double au_time_s = 2.4188843265857e-17;
inline constexpr double bohr_m = 5.29177210903e-11;
inline constexpr double bohr_cm = bohr_m * 1e2;
inline constexpr double au_field_v_per_m = 5.14220674763e11;
inline constexpr double c_au = 137.035999084;  // speed of light = 1/alpha
inline constexpr double boltzmann_j_per_k = 1.380649e-23;
inline constexpr double hbar_js = 1.054571817e-34;
inline constexpr double pi = std::numbers::pi;

// Derived atomic units.
inline constexpr double au_power_w = hartree_j / au_time_s;
inline constexpr double au_intensity_w_per_cm2 = au_power_w / (bohr_cm * bohr_cm);
inline constexpr double au_pressure_pa = hartree_j / (bohr_m * bohr_m * bohr_m);
inline constexpr double au_temperature_k = hartree_j / boltzmann_j_per_k;
}  // namespace constants

enum class Dimension {
  energy,
  time,
  length,
  area,
  electric_field,
  intensity,
  frequency,          // cycles per unit time
  angular_frequency,  // radians per unit time
  rate,               // events per unit time
  pressure,
  temperature,
  number_density,
  dimensionless,
};

std::string_view to_string(Dimension d);

class DimensionError : public std::invalid_argument {
 public:
  DimensionError(Dimension expected, Dimension got);
  Dimension expected() const { return expected_; }
  Dimension got() const { return got_; }

 private:
  Dimension expected_;
  Dimension got_;
};

class UnknownUnitError : public std::invalid_argument {
 public:
  explicit UnknownUnitError(std::string_view symbol);
};

/// A unit is a dimension plus the factor that takes a value in this unit to
/// atomic units: value_au = value * to_au.
struct Unit {
  std::string_view symbol;
  Dimension dimension;
  double to_au;

  friend constexpr bool operator==(const Unit& a, const Unit& b) {
    return a.symbol == b.symbol && a.dimension == b.dimension && a.to_au == b.to_au;
  }
};

namespace units {
using namespace constants;
inline constexpr Unit hartree{"hartree", Dimension::energy, 1.0};
inline constexpr Unit ev{"eV", Dimension::energy, 1.0 / hartree_ev};
inline constexpr Unit joule{"J", Dimension::energy, 1.0 / hartree_j};

inline constexpr Unit au_time{"au_time", Dimension::time, 1.0};
inline constexpr Unit second{"s", Dimension::time, 1.0 / au_time_s};
inline constexpr Unit nanosecond{"ns", Dimension::time, 1e-9 / au_time_s};
inline constexpr Unit femtosecond{"fs", Dimension::time, 1e-15 / au_time_s};

inline constexpr Unit bohr{"bohr", Dimension::length, 1.0};
inline constexpr Unit meter{"m", Dimension::length, 1.0 / bohr_m};
inline constexpr Unit centimeter{"cm", Dimension::length, 1e-2 / bohr_m};
inline constexpr Unit millimeter{"mm", Dimension::length, 1e-3 / bohr_m};
inline constexpr Unit micrometer{"um", Dimension::length, 1e-6 / bohr_m};
inline constexpr Unit nanometer{"nm", Dimension::length, 1e-9 / bohr_m};

inline constexpr Unit bohr2{"bohr2", Dimension::area, 1.0};
inline constexpr Unit cm2{"cm2", Dimension::area, 1.0 / (bohr_cm * bohr_cm)};

inline constexpr Unit au_field{"au_field", Dimension::electric_field, 1.0};
inline constexpr Unit volt_per_meter{"V/m", Dimension::electric_field, 1.0 / au_field_v_per_m};
inline constexpr Unit volt_per_cm{"V/cm", Dimension::electric_field, 1e2 / au_field_v_per_m};

inline constexpr Unit au_intensity{"au_intensity", Dimension::intensity, 1.0};
inline constexpr Unit watt_per_cm2{"W/cm2", Dimension::intensity, 1.0 / au_intensity_w_per_cm2};
inline constexpr Unit watt_per_m2{"W/m2", Dimension::intensity, 1e-4 / au_intensity_w_per_cm2};

inline constexpr Unit au_frequency{"au_frequency", Dimension::frequency, 1.0};
inline constexpr Unit hertz{"Hz", Dimension::frequency, au_time_s};
inline constexpr Unit terahertz{"THz", Dimension::frequency, 1e12 * au_time_s};

inline constexpr Unit au_angular{"au_angular", Dimension::angular_frequency, 1.0};
inline constexpr Unit rad_per_s{"rad/s", Dimension::angular_frequency, au_time_s};

inline constexpr Unit au_rate{"au_rate", Dimension::rate, 1.0};
inline constexpr Unit per_second{"1/s", Dimension::rate, au_time_s};

inline constexpr Unit au_pressure{"au_pressure", Dimension::pressure, 1.0};
inline constexpr Unit pascal{"Pa", Dimension::pressure, 1.0 / au_pressure_pa};
inline constexpr Unit bar{"bar", Dimension::pressure, 1e5 / au_pressure_pa};

inline constexpr Unit au_temperature{"au_temperature", Dimension::temperature, 1.0};
inline constexpr Unit kelvin{"K", Dimension::temperature, 1.0 / au_temperature_k};

inline constexpr Unit per_bohr3{"1/bohr3", Dimension::number_density, 1.0};
inline constexpr Unit per_cm3{"1/cm3", Dimension::number_density, bohr_cm * bohr_cm * bohr_cm};
inline constexpr Unit per_m3{"1/m3", Dimension::number_density, bohr_m * bohr_m * bohr_m};

inline constexpr Unit one{"1", Dimension::dimensionless, 1.0};
}  // namespace units

/// Every unit known to the parser, in a stable order.
std::span<const Unit> all_units();

/// Looks a unit up by symbol. Throws UnknownUnitError.
const Unit& unit_by_symbol(std::string_view symbol);

/// Compile-time dimensioned quantity; the value is held in atomic units.
/// Mixing dimensions in +, -, or comparisons does not compile.
template <Dimension D>
class Quantity {
 public:
  static constexpr Dimension dimension = D;

  constexpr Quantity() = default;

  static constexpr Quantity from_au(double v) { return Quantity(v); }

  static Quantity from(double v, const Unit& u) {
    if (u.dimension != D) throw DimensionError(D, u.dimension);
    return Quantity(v * u.to_au);
  }

  constexpr double au() const { return value_; }

  double in(const Unit& u) const {
    if (u.dimension != D) throw DimensionError(D, u.dimension);
    return value_ / u.to_au;
  }

  constexpr Quantity operator-() const { return Quantity(-value_); }
  constexpr Quantity& operator+=(Quantity o) { value_ += o.value_; return *this; }
  constexpr Quantity& operator-=(Quantity o) { value_ -= o.value_; return *this; }

  friend constexpr Quantity operator+(Quantity a, Quantity b) { return Quantity(a.value_ + b.value_); }
  friend constexpr Quantity operator-(Quantity a, Quantity b) { return Quantity(a.value_ - b.value_); }
  friend constexpr Quantity operator*(Quantity a, double s) { return Quantity(a.value_ * s); }
  friend constexpr Quantity operator*(double s, Quantity a) { return Quantity(a.value_ * s); }
  friend constexpr Quantity operator/(Quantity a, double s) { return Quantity(a.value_ / s); }
  friend constexpr double operator/(Quantity a, Quantity b) { return a.value_ / b.value_; }
  friend constexpr auto operator<=>(Quantity a, Quantity b) = default;

 private:
  constexpr explicit Quantity(double v) : value_(v) {}
  double value_ = 0.0;
};

using Energy = Quantity<Dimension::energy>;
using Time = Quantity<Dimension::time>;
using Length = Quantity<Dimension::length>;
using Area = Quantity<Dimension::area>;
using ElectricField = Quantity<Dimension::electric_field>;
using Intensity = Quantity<Dimension::intensity>;
using Frequency = Quantity<Dimension::frequency>;
using AngularFrequency = Quantity<Dimension::angular_frequency>;
using Rate = Quantity<Dimension::rate>;
using Pressure = Quantity<Dimension::pressure>;
using Temperature = Quantity<Dimension::temperature>;
using NumberDensity = Quantity<Dimension::number_density>;

inline AngularFrequency to_angular(Frequency f) {
  return AngularFrequency::from_au(2.0 * constants::pi * f.au());
}

/// Runtime-tagged quantity: a value expressed in a particular unit, as read
/// from configuration files or the command line.
struct DynamicQuantity {
  double value = 0.0;
  Unit unit = units::one;

  double au() const { return value * unit.to_au; }

  template <Dimension D>
  Quantity<D> as() const { return Quantity<D>::from(value, unit); }

  friend DynamicQuantity operator+(const DynamicQuantity& a, const DynamicQuantity& b);
  friend DynamicQuantity operator-(const DynamicQuantity& a, const DynamicQuantity& b);
};

/// Re-expresses q in the target unit. Throws DimensionError on mismatch.
DynamicQuantity convert(const DynamicQuantity& q, const Unit& target);

template <Dimension D>
DynamicQuantity convert(Quantity<D> q, const Unit& target) {
  return DynamicQuantity{q.in(target), target};
}

/// Parses "20.62 eV", "1e14 W/cm2", "50 fs". Throws UnknownUnitError or
/// std::invalid_argument.
DynamicQuantity parse_quantity(std::string_view text);

std::string format_quantity(const DynamicQuantity& q);

}  // namespace attopair
