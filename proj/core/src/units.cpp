#include "attopair/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

namespace attopair {

std::string_view to_string(Dimension d) {
  switch (d) {
    case Dimension::energy: return "energy";
    case Dimension::time: return "time";
    case Dimension::length: return "length";
    case Dimension::area: return "area";
    case Dimension::electric_field: return "electric-field";
    case Dimension::intensity: return "intensity";
    case Dimension::frequency: return "frequency";
    case Dimension::angular_frequency: return "angular-frequency";
    case Dimension::rate: return "rate";
    case Dimension::pressure: return "pressure";
    case Dimension::temperature: return "temperature";
    case Dimension::number_density: return "number-density";
    case Dimension::dimensionless: return "dimensionless";
  }
  return "?";
}

DimensionError::DimensionError(Dimension expected, Dimension got)
    : std::invalid_argument("dimension mismatch: expected " + std::string(to_string(expected)) +
                            ", got " + std::string(to_string(got))),
      expected_(expected),
      got_(got) {}

UnknownUnitError::UnknownUnitError(std::string_view symbol)
    : std::invalid_argument("unknown unit '" + std::string(symbol) + "'") {}

namespace {
constexpr std::array kUnits = {
    units::hartree, units::ev, units::joule,
    units::au_time, units::second, units::nanosecond, units::femtosecond,
    units::bohr, units::meter, units::centimeter, units::millimeter, units::micrometer, units::nanometer,
    units::bohr2, units::cm2,
    units::au_field, units::volt_per_meter, units::volt_per_cm,
    units::au_intensity, units::watt_per_cm2, units::watt_per_m2,
    units::au_frequency, units::hertz, units::terahertz,
    units::au_angular, units::rad_per_s,
    units::au_rate, units::per_second,
    units::au_pressure, units::pascal, units::bar,
    units::au_temperature, units::kelvin,
    units::per_bohr3, units::per_cm3, units::per_m3,
    units::one,
};
}  // namespace

std::span<const Unit> all_units() { return kUnits; }

const Unit& unit_by_symbol(std::string_view symbol) {
  for (const auto& u : kUnits) {
    if (u.symbol == symbol) return u;
  }
  throw UnknownUnitError(symbol);
}

DynamicQuantity operator+(const DynamicQuantity& a, const DynamicQuantity& b) {
  if (a.unit.dimension != b.unit.dimension) throw DimensionError(a.unit.dimension, b.unit.dimension);
  return DynamicQuantity{a.value + b.au() / a.unit.to_au, a.unit};
}

DynamicQuantity operator-(const DynamicQuantity& a, const DynamicQuantity& b) {
  if (a.unit.dimension != b.unit.dimension) throw DimensionError(a.unit.dimension, b.unit.dimension);
  return DynamicQuantity{a.value - b.au() / a.unit.to_au, a.unit};
}

DynamicQuantity convert(const DynamicQuantity& q, const Unit& target) {
  if (q.unit.dimension != target.dimension) throw DimensionError(target.dimension, q.unit.dimension);
  if (q.unit == target) return q;
  return DynamicQuantity{q.value * (q.unit.to_au / target.to_au), target};
}

DynamicQuantity parse_quantity(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{}) throw std::invalid_argument("cannot parse quantity '" + std::string(text) + "'");
  std::string_view rest = trim(std::string_view(ptr, text.data() + text.size() - ptr));
  if (rest.empty()) return DynamicQuantity{value, units::one};
  return DynamicQuantity{value, unit_by_symbol(rest)};
}

std::string format_quantity(const DynamicQuantity& q) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), q.value);
  std::string out(buf.data(), ptr);
  if (q.unit.dimension != Dimension::dimensionless) {
    out += ' ';
    out += q.unit.symbol;
  }
  return out;
}

}  // namespace attopair
