#include <cmath>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>

#include "attopair/json_locate.hpp"
#include "attopair/schemes.hpp"

namespace attopair {

using constants::pi;

ConfigError::ConfigError(const std::string& what, int line, int column)
    : std::invalid_argument(line > 0 ? what + " (line " + std::to_string(line) + ", column " +
                                           std::to_string(column) + ")"
                                     : what),
      line_(line),
      column_(column) {}

std::string to_string(SchemeId id) {
  switch (id) {
    case SchemeId::narrowband_4photon: return "narrowband-4photon";
    case SchemeId::broadband_4photon: return "broadband-4photon";
    case SchemeId::sequential: return "sequential";
    case SchemeId::scrap: return "scrap";
    case SchemeId::etpa: return "etpa";
  }
  return "unknown";
}

std::vector<SchemeId> all_schemes() {
  return {SchemeId::narrowband_4photon, SchemeId::broadband_4photon, SchemeId::sequential,
          SchemeId::scrap, SchemeId::etpa};
}

SchemeId scheme_from_string(const std::string& name) {
  for (SchemeId id : all_schemes())
    if (to_string(id) == name) return id;
  throw ConfigError("unknown scheme '" + name +
                    "' (expected narrowband-4photon, broadband-4photon, sequential, scrap, etpa)");
}

namespace {

struct Field {
  double SchemeConfig::* number = nullptr;
  std::optional<double> SchemeConfig::* optional = nullptr;
  std::string SchemeConfig::* text = nullptr;
};

const std::vector<std::pair<std::string, Field>>& fields() {
  using C = SchemeConfig;
  static const std::vector<std::pair<std::string, Field>> f = {
      {"species", {nullptr, nullptr, &C::species}},
      {"spot_diameter_um", {&C::spot_diameter_um}},
      {"path_length_mm", {&C::path_length_mm}},
      {"pressure_bar", {&C::pressure_bar}},
      {"temperature_k", {&C::temperature_k}},
      {"density_per_bar_cm3", {nullptr, &C::density_per_bar_cm3}},
      {"number_density_cm3", {nullptr, &C::number_density_cm3}},
      {"atoms_in_focus", {nullptr, &C::atoms_in_focus}},
      {"pump_intensity_w_cm2", {&C::pump_intensity_w_cm2}},
      {"pump_photon_energy_ev", {&C::pump_photon_energy_ev}},
      {"lineshape_factor_au", {&C::lineshape_factor_au}},
      {"bandwidth_hz", {&C::bandwidth_hz}},
      {"reference_linewidth_hz", {&C::reference_linewidth_hz}},
      {"spectral_profile", {nullptr, nullptr, &C::spectral_profile}},
      {"lamp_photons_per_s", {&C::lamp_photons_per_s}},
      {"lamp_intensity_w_cm2", {&C::lamp_intensity_w_cm2}},
      {"laser_intensity_w_cm2", {&C::laser_intensity_w_cm2}},
      {"laser_photon_energy_ev", {&C::laser_photon_energy_ev}},
      {"tau_2p_ns", {&C::tau_2p_ns}},
      {"promotion_rate_hz", {&C::promotion_rate_hz}},
      {"pulse_duration_fs", {&C::pulse_duration_fs}},
      {"sweep_bandwidth_hz", {&C::sweep_bandwidth_hz}},
      {"sweep_window", {nullptr, nullptr, &C::sweep_window}},
      {"rabi_units", {nullptr, nullptr, &C::rabi_units}},
      {"repetition_rate_hz", {&C::repetition_rate_hz}},
      {"excitation_fraction", {&C::excitation_fraction}},
      {"sigma2_cm4s", {&C::sigma2_cm4s}},
      {"entanglement_time_s", {&C::entanglement_time_s}},
      {"entanglement_area_cm2", {&C::entanglement_area_cm2}},
      {"photon_rate_per_s", {&C::photon_rate_per_s}},
      {"molecules", {nullptr, &C::molecules}},
      {"collection_solid_angle_fraction", {&C::collection_solid_angle_fraction}},
  };
  return f;
}

[[noreturn]] void fail_at(const std::string& text, const std::vector<std::string>& path, const std::string& msg) {
  const auto pos = locate_json_key(text, path);
  if (pos) throw ConfigError(msg, pos->line, pos->column);
  throw ConfigError(msg);
}

}  // namespace

void validate(const SchemeConfig& c) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(name) + " must be positive");
  };
  positive(c.spot_diameter_um, "spot_diameter_um");
  positive(c.path_length_mm, "path_length_mm");
  positive(c.pressure_bar, "pressure_bar");
  positive(c.temperature_k, "temperature_k");
  if (c.density_per_bar_cm3) positive(*c.density_per_bar_cm3, "density_per_bar_cm3");
  if (c.number_density_cm3) positive(*c.number_density_cm3, "number_density_cm3");
  if (c.atoms_in_focus && !(*c.atoms_in_focus >= 0.0)) throw ConfigError("atoms_in_focus must be >= 0");
  if (!(c.pump_intensity_w_cm2 >= 0.0)) throw ConfigError("pump_intensity_w_cm2 must be >= 0");
  positive(c.pump_photon_energy_ev, "pump_photon_energy_ev");
  positive(c.lineshape_factor_au, "lineshape_factor_au");
  positive(c.bandwidth_hz, "bandwidth_hz");
  positive(c.reference_linewidth_hz, "reference_linewidth_hz");
  if (c.lamp_photons_per_s < 0.0) throw ConfigError("lamp_photons_per_s must be >= 0");
  positive(c.lamp_intensity_w_cm2, "lamp_intensity_w_cm2");
  positive(c.laser_intensity_w_cm2, "laser_intensity_w_cm2");
  positive(c.laser_photon_energy_ev, "laser_photon_energy_ev");
  positive(c.tau_2p_ns, "tau_2p_ns");
  positive(c.promotion_rate_hz, "promotion_rate_hz");
  positive(c.pulse_duration_fs, "pulse_duration_fs");
  positive(c.sweep_bandwidth_hz, "sweep_bandwidth_hz");
  if (c.repetition_rate_hz < 0.0) throw ConfigError("repetition_rate_hz must be >= 0");
  if (!(c.excitation_fraction >= 0.0 && c.excitation_fraction <= 1.0))
    throw ConfigError("excitation_fraction must lie in [0, 1]");
  positive(c.sigma2_cm4s, "sigma2_cm4s");
  positive(c.entanglement_time_s, "entanglement_time_s");
  positive(c.entanglement_area_cm2, "entanglement_area_cm2");
  if (c.photon_rate_per_s < 0.0) throw ConfigError("photon_rate_per_s must be >= 0");
  if (c.molecules && !(*c.molecules >= 0.0)) throw ConfigError("molecules must be >= 0");
  if (!(c.collection_solid_angle_fraction >= 0.0 && c.collection_solid_angle_fraction <= 1.0))
    throw ConfigError("collection_solid_angle_fraction must lie in [0, 1]");
  if (c.spectral_profile != "flat-top" && c.spectral_profile != "gaussian")
    throw ConfigError("spectral_profile must be flat-top or gaussian");
  if (c.sweep_window != "half" && c.sweep_window != "symmetric")
    throw ConfigError("sweep_window must be half or symmetric");
  if (c.rabi_units != "tabulated" && c.rabi_units != "physical")
    throw ConfigError("rabi_units must be tabulated or physical");
}

namespace {

nlohmann::json parse_config_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const TextPosition p = position_of(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ConfigError(std::string("JSON parse error: ") + e.what(), p.line, p.column);
  }
}

void read_fields(const std::string& text, const nlohmann::json& j, const std::vector<std::string>& base,
                 SchemeConfig& c) {
  auto at = [&](const std::string& key) {
    auto p = base;
    p.push_back(key);
    return p;
  };
  for (const auto& [key, v] : j.items()) {
    if (key == "scheme") {
      if (!v.is_string()) fail_at(text, at(key), "'scheme' must be a string");
      try {
        c.scheme = scheme_from_string(v.get<std::string>());
      } catch (const ConfigError& e) {
        fail_at(text, at(key), e.what());
      }
      continue;
    }
    const auto& table = fields();
    auto it = std::find_if(table.begin(), table.end(), [&](const auto& f) { return f.first == key; });
    if (it == table.end()) fail_at(text, at(key), "unknown key '" + key + "'");
    const Field& f = it->second;
    if (f.number) {
      if (!v.is_number()) fail_at(text, at(key), "'" + key + "' must be a number");
      c.*f.number = v.get<double>();
    } else if (f.optional) {
      if (v.is_null()) {
        c.*f.optional = std::nullopt;
      } else {
        if (!v.is_number()) fail_at(text, at(key), "'" + key + "' must be a number or null");
        c.*f.optional = v.get<double>();
      }
    } else {
      if (!v.is_string()) fail_at(text, at(key), "'" + key + "' must be a string");
      c.*f.text = v.get<std::string>();
    }
  }
}

}  // namespace

SchemeConfig scheme_config_from_json(const std::string& text) {
  return scheme_config_from_json(text, {}, SchemeConfig{});
}

SchemeConfig scheme_config_from_json(const std::string& text, const std::vector<std::string>& object_path,
                                     SchemeConfig base) {
  const nlohmann::json root = parse_config_text(text);
  const nlohmann::json* node = &root;
  for (const auto& key : object_path) {
    if (!node->is_object() || !node->contains(key))
      throw ConfigError("missing object '" + key + "'");
    node = &(*node)[key];
  }
  if (!node->is_object()) {
    if (object_path.empty()) throw ConfigError("scheme config must be a JSON object", 1, 1);
    fail_at(text, object_path, "scheme config must be a JSON object");
  }
  read_fields(text, *node, object_path, base);
  try {
    validate(base);
  } catch (const ConfigError& e) {
    if (object_path.empty()) throw;
    fail_at(text, object_path, e.what());
  }
  return base;
}

std::string to_json(const SchemeConfig& c) {
  nlohmann::ordered_json j;
  j["scheme"] = to_string(c.scheme);
  for (const auto& [key, f] : fields()) {
    if (f.number) {
      j[key] = c.*f.number;
    } else if (f.optional) {
      const auto& o = c.*f.optional;
      j[key] = o ? nlohmann::ordered_json(*o) : nlohmann::ordered_json(nullptr);
    } else {
      j[key] = c.*f.text;
    }
  }
  return j.dump(2) + "\n";
}

double focal_atoms(const SchemeConfig& c) {
  if (c.atoms_in_focus) return *c.atoms_in_focus;
  const Length d = Length::from(c.spot_diameter_um, units::micrometer);
  const Length l = Length::from(c.path_length_mm, units::millimeter);
  if (c.number_density_cm3)
    return atoms_in_focal_volume(NumberDensity::from(*c.number_density_cm3, units::per_cm3), d, l);
  if (c.density_per_bar_cm3)
    return atoms_in_focal_volume(
        NumberDensity::from(*c.density_per_bar_cm3 * c.pressure_bar, units::per_cm3), d, l);
  return atoms_in_focal_volume(Pressure::from(c.pressure_bar, units::bar),
                               Temperature::from(c.temperature_k, units::kelvin), d, l);
}

const ReportEntry& RateReport::at(const std::string& key) const {
  if (final_rate.key == key) return final_rate;
  for (const auto& e : entries)
    if (e.key == key) return e;
  throw std::out_of_range("report has no entry '" + key + "'");
}

namespace {

nlohmann::ordered_json entry_json(const ReportEntry& e) {
  nlohmann::ordered_json j;
  j["key"] = e.key;
  j["value"] = e.value;
  j["unit"] = e.unit;
  j["provenance"] = e.provenance;
  return j;
}

ReportEntry entry_from(const nlohmann::json& j) {
  return {j.at("key").get<std::string>(), j.at("value").get<double>(), j.at("unit").get<std::string>(),
          j.at("provenance").get<std::string>()};
}

}  // namespace

std::string to_json(const RateReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = r.schema_version;
  j["scheme"] = r.scheme;
  j["species"] = r.species;
  j["final_rate"] = entry_json(r.final_rate);
  j["binding_constraint"] = r.binding_constraint;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) j["entries"].push_back(entry_json(e));
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

RateReport rate_report_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    RateReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion) throw ConfigError("unsupported report schema_version");
    r.scheme = j.at("scheme").get<std::string>();
    r.species = j.at("species").get<std::string>();
    r.final_rate = entry_from(j.at("final_rate"));
    r.binding_constraint = j.at("binding_constraint").get<std::string>();
    for (const auto& e : j.at("entries")) r.entries.push_back(entry_from(e));
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("rate report: ") + e.what());
  }
}

namespace {

RateReport start(const SchemeConfig& c) {
  validate(c);
  RateReport r;
  r.scheme = to_string(c.scheme);
  r.species = c.species;
  return r;
}

void add(RateReport& r, std::string key, double value, std::string unit, std::string provenance) {
  r.entries.push_back({std::move(key), value, std::move(unit), std::move(provenance)});
}

// Shared narrowband chain; returns the bi-photon rate.
double narrowband_chain(const SchemeConfig& c, RateReport& r) {
  const SpeciesData sp = species(c.species);
  const Intensity i0 = Intensity::from(c.pump_intensity_w_cm2, units::watt_per_cm2);
  const Energy photon = Energy::from(c.pump_photon_energy_ev, units::ev);
  const ElectricField e0 = intensity_to_field(i0);
  const double omega = four_photon_rabi_au(i0, sp);
  const Rate r4 = four_photon_rate(i0, sp, c.lineshape_factor_au);
  const double atoms = focal_atoms(c);
  const double volume_cm3 = focal_volume_cm3(Length::from(c.spot_diameter_um, units::micrometer),
                                             Length::from(c.path_length_mm, units::millimeter));
  const NumberDensity n = NumberDensity::from(atoms / volume_cm3, units::per_cm3);
  const double length_cm = c.path_length_mm * 0.1;
  double alpha = 0.0, frac = 0.0, photons = 0.0;
  if (c.pump_intensity_w_cm2 > 0.0) {
    alpha = absorption_coefficient(4, r4, n, i0, photon);
    frac = attenuation_fraction(c.pump_intensity_w_cm2, alpha, length_cm, 4);
    photons = photon_flux(i0, photon, Length::from(c.spot_diameter_um, units::micrometer))
                  .photons.in(units::per_second);
  }
  const double rate = photons * frac / 4.0;

  add(r, "field", e0.au(), "au_field", "E0 = sqrt(8 pi I / c)");
  add(r, "rabi_frequency", omega, "hartree", "Omega4 = (E0/2)^4 D4");
  add(r, "lineshape_factor", c.lineshape_factor_au, "1/hartree", "resonance delta replaced by this factor");
  add(r, "rate_per_atom_au", r4.au(), "au_rate", "R4 = 2 pi L Omega4^2");
  add(r, "rate_per_atom", r4.in(units::per_second), "1/s", "R4 / (a.u. of time)");
  add(r, "number_density", n.in(units::per_cm3), "1/cm3", "atoms / focal volume");
  add(r, "atoms_in_focus", atoms, "1", "N pi (d/2)^2 L");
  add(r, "alpha", alpha, "W^-3 cm^5", "alpha4 = 4 hbar w R4 N / I^4");
  add(r, "absorption_fraction", frac, "1", "1 - (1 + 3 alpha L I0^3)^(-1/3)");
  add(r, "photon_flux", photons, "1/s", "I (pi d^2 / 4) / (hbar w)");
  return rate;
}

}  // namespace

RateReport biphoton_rate_narrowband(const SchemeConfig& c) {
  RateReport r = start(c);
  const double rate = narrowband_chain(c, r);
  r.final_rate = {"biphoton_rate", rate, "1/s", "photon_flux x absorption_fraction / 4"};
  r.binding_constraint = "pump absorption";
  return r;
}

RateReport four_photon_rate_broadband(const SchemeConfig& c) {
  RateReport r = start(c);
  const double narrow = narrowband_chain(c, r);
  const Frequency bw = Frequency::from(c.bandwidth_hz, units::hertz);
  const Frequency ref = Frequency::from(c.reference_linewidth_hz, units::hertz);
  const double flat = broadband_dilution_flat(bw, ref);
  const double gauss = broadband_dilution_gaussian(bw, ref);
  const double dilution = c.spectral_profile == "gaussian" ? gauss : flat;
  add(r, "narrowband_biphoton_rate", narrow, "1/s", "photon_flux x absorption_fraction / 4");
  add(r, "dilution_flat_top", flat, "1", "reference_linewidth / bandwidth");
  add(r, "dilution_gaussian", gauss, "1", "erf(reference_linewidth sqrt(ln 2) / bandwidth)");
  r.final_rate = {"biphoton_rate", narrow * dilution, "1/s", "narrowband rate x spectral dilution"};
  r.binding_constraint = "pump spectral density";
  r.notes.push_back("bandwidths are ordinary frequencies (Hz); profile: " + c.spectral_profile);
  return r;
}

RateReport biphoton_rate_sequential(const SchemeConfig& c) {
  RateReport r = start(c);
  const SpeciesData sp = species(c.species);
  const Time tau = Time::from(c.tau_2p_ns, units::nanosecond);
  const Intensity lamp_i = Intensity::from(c.lamp_intensity_w_cm2, units::watt_per_cm2);
  const Intensity laser_i = Intensity::from(c.laser_intensity_w_cm2, units::watt_per_cm2);
  const Rate r_lamp = one_photon_rate(sp.f_g2p, lamp_i, sp.e_2p, tau);
  const Energy laser_photon = Energy::from(c.laser_photon_energy_ev, units::ev);
  const Rate r_laser = one_photon_rate(sp.f_2p2s, laser_i, laser_photon, tau);
  const double fraction = steady_state_fraction(r_lamp, tau);
  const double atoms = focal_atoms(c);
  const double excited = fraction * atoms;
  const double inventory = excited * c.promotion_rate_hz;
  const double laser_photons =
      photon_flux(laser_i, laser_photon, Length::from(c.spot_diameter_um, units::micrometer))
          .photons.in(units::per_second);

  add(r, "lamp_excitation_rate", r_lamp.in(units::per_second), "1/s", "R1 = pi f / w E0^2 tau_2p");
  add(r, "laser_transfer_rate", r_laser.in(units::per_second), "1/s", "R1 = pi |f| / w E0^2 tau_2p");
  add(r, "tau_2p", tau.in(units::second), "s", "1s2p lifetime replacing the resonance delta");
  add(r, "steady_state_fraction", fraction, "1", "(1/2)(1 - 1/(1 + 2 R1 tau_2p))");
  add(r, "atoms_in_focus", atoms, "1", "N pi (d/2)^2 L");
  add(r, "excited_atoms", excited, "1", "fraction x atoms");
  add(r, "inventory_turnover", inventory, "1/s", "excited_atoms x promotion_rate");
  add(r, "lamp_photons", c.lamp_photons_per_s, "1/s", "lamp photon supply");
  add(r, "laser_photons", laser_photons, "1/s", "I (pi d^2 / 4) / (hbar w)");
  const bool lamp_limited = c.lamp_photons_per_s < inventory;
  r.final_rate = {"biphoton_rate", std::min(c.lamp_photons_per_s, inventory), "1/s",
                  "min(lamp photons, excited-atom turnover)"};
  r.binding_constraint = lamp_limited ? "lamp photon supply" : "excited-atom inventory";
  if (laser_photons < excited)
    r.notes.push_back("2059 nm photon supply below the excited-atom count; transfer not saturated");
  return r;
}

RateReport scrap_transfer(const SchemeConfig& c) {
  RateReport r = start(c);
  const ScrapResult s = scrap_transfer_probability(c);
  const double atoms = focal_atoms(c);
  add(r, "rabi_frequency", s.omega_eg_per_s, "1/s", "Omega4 in the configured rabi_units");
  add(r, "lz_exponent_half", s.exponent_half, "1", "W^2 (2 tau/delta) atan(2 delta/gamma)");
  add(r, "lz_exponent_symmetric", s.exponent_symmetric, "1", "W^2 (4 tau/delta) atan(delta/gamma)");
  add(r, "transfer_probability", s.probability, "1", "1 - exp(-int Gamma dt)");
  add(r, "atoms_in_focus", atoms, "1", "N pi (d/2)^2 L or override");
  add(r, "excitation_fraction", c.excitation_fraction, "1", "per-pulse excited fraction allowance");
  add(r, "repetition_rate", c.repetition_rate_hz, "1/s", "pulse pairs per second");
  r.final_rate = {"biphoton_rate", scrap_biphoton_rate(c.excitation_fraction, atoms, c.repetition_rate_hz),
                  "1/s", "excitation_fraction x atoms x repetition_rate"};
  r.binding_constraint = "per-pulse excitation allowance";
  r.notes.push_back("window: " + c.sweep_window + "; rabi units: " + c.rabi_units);
  return r;
}

RateReport etpa_report(const SchemeConfig& c) {
  RateReport r = start(c);
  const double molecules = c.molecules ? *c.molecules : focal_atoms(c);
  const EtpaResult e = etpa_ion_rate(c.sigma2_cm4s, c.entanglement_time_s, c.entanglement_area_cm2,
                                     c.photon_rate_per_s, molecules);
  add(r, "sigma_e", e.sigma_e_cm2, "cm2", "sigma2 / (A_e T_e)");
  add(r, "per_molecule_rate", e.per_molecule_rate, "1/s", "sigma_e x photons / A_e");
  add(r, "molecules", molecules, "1", "target molecules in the focal volume");
  r.final_rate = {"ion_rate", e.ion_rate, "1/s", "per_molecule_rate x molecules"};
  r.binding_constraint = "entangled photon flux";
  return r;
}

RateReport compute_report(const SchemeConfig& c) {
  switch (c.scheme) {
    case SchemeId::narrowband_4photon: return biphoton_rate_narrowband(c);
    case SchemeId::broadband_4photon: return four_photon_rate_broadband(c);
    case SchemeId::sequential: return biphoton_rate_sequential(c);
    case SchemeId::scrap: return scrap_transfer(c);
    case SchemeId::etpa: return etpa_report(c);
  }
  throw ConfigError("unknown scheme");
}

}  // namespace attopair
