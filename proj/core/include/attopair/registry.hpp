#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "attopair/units.hpp"

namespace attopair {

/// Atomic data for one emitter species. Energies are measured from the
/// 1s^2 ground state.
struct SpeciesData {
  std::string name;
  int z = 2;
  Energy delta_eg;                  // E(1s2s 1S0) - E(1s^2)
  Energy e_2p;                      // E(1s2p 1P1)
  double f_g2p = 0.0;               // oscillator strength 1s^2 -> 1s2p
  double f_2p2s = 0.0;              // oscillator strength 1s2p -> 1s2s (negative: downward in energy)
  std::optional<double> d4_eg_au;   // four-photon matrix element
  std::optional<Time> lifetime_2s;  // measured 1s2s 1S0 lifetime

  friend bool operator==(const SpeciesData&, const SpeciesData&) = default;
};

class UnknownSpeciesError : public std::invalid_argument {
 public:
  UnknownSpeciesError(const std::string& name, const std::vector<std::string>& available);
};

class RegistryFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws std::invalid_argument if the record violates the species invariants.
void validate(const SpeciesData& s);

/// Effective-charge scaling of the helium entry to a helium-like ion of
/// nuclear charge z. The screening constant is fitted so that z = 10 lands on
/// the tabulated Ne8+ 1s2s energy.
SpeciesData helium_like(const SpeciesData& helium, int z);

/// Screening constant used by helium_like().
double helium_like_screening(const SpeciesData& helium);

inline constexpr int kRegistrySchemaVersion = 1;

class SpeciesRegistry {
 public:
  /// Registry holding the compiled-in entries.
  static const SpeciesRegistry& builtin();

  /// Loads a registry file and merges it over the built-ins.
  static SpeciesRegistry with_overrides(const std::string& json_text);

  /// "He", "He-like(Z=10)", or an alias such as "Ne8+".
  SpeciesData get(const std::string& name) const;

  std::vector<std::string> names() const;

  /// Versioned JSON form; parse(serialize()) reproduces the registry.
  std::string to_json() const;
  static SpeciesRegistry from_json(const std::string& json_text);

  void merge(const SpeciesRegistry& other);

 private:
  std::map<std::string, SpeciesData> entries_;
};

/// Shorthand for SpeciesRegistry::builtin().get(name).
SpeciesData species(const std::string& name);

}  // namespace attopair
