#include "attopair/registry.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <regex>
#include <set>

namespace attopair {

namespace {

constexpr double kNe8DeltaEgEv = 915.0;

SpeciesData make_helium() {
  SpeciesData he;
  he.name = "He";
  he.z = 2;
  he.delta_eg = Energy::from(20.62, units::ev);
  he.e_2p = Energy::from(21.22, units::ev);
  he.f_g2p = 0.28;
  he.f_2p2s = -0.36;
  he.d4_eg_au = 149.0;
  he.lifetime_2s = Time::from(0.0197, units::second);
  return he;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

const std::map<std::string, int>& aliases() {
  static const std::map<std::string, int> a = {{"N5+", 7}, {"O6+", 8}, {"Ne8+", 10}};
  return a;
}

std::string helium_like_name(int z) { return "He-like(Z=" + std::to_string(z) + ")"; }

nlohmann::ordered_json species_to_json(const SpeciesData& s) {
  nlohmann::ordered_json j;
  j["name"] = s.name;
  j["z"] = s.z;
  j["delta_eg_ev"] = s.delta_eg.in(units::ev);
  j["e_2p_ev"] = s.e_2p.in(units::ev);
  j["f_g2p"] = s.f_g2p;
  j["f_2p2s"] = s.f_2p2s;
  j["d4_eg_au"] = s.d4_eg_au ? nlohmann::ordered_json(*s.d4_eg_au) : nlohmann::ordered_json(nullptr);
  j["lifetime_2s_s"] = s.lifetime_2s ? nlohmann::ordered_json(s.lifetime_2s->in(units::second))
                                     : nlohmann::ordered_json(nullptr);
  return j;
}

SpeciesData species_from_json(const nlohmann::json& j) {
  static const std::set<std::string> known = {"name", "z", "delta_eg_ev", "e_2p_ev", "f_g2p",
                                              "f_2p2s", "d4_eg_au", "lifetime_2s_s"};
  if (!j.is_object()) throw RegistryFormatError("species entry must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw RegistryFormatError("unknown species field '" + key + "'");
  }
  try {
    SpeciesData s;
    s.name = j.at("name").get<std::string>();
    s.z = j.at("z").get<int>();
    s.delta_eg = Energy::from(j.at("delta_eg_ev").get<double>(), units::ev);
    s.e_2p = Energy::from(j.at("e_2p_ev").get<double>(), units::ev);
    s.f_g2p = j.at("f_g2p").get<double>();
    s.f_2p2s = j.at("f_2p2s").get<double>();
    if (j.contains("d4_eg_au") && !j["d4_eg_au"].is_null()) s.d4_eg_au = j["d4_eg_au"].get<double>();
    if (j.contains("lifetime_2s_s") && !j["lifetime_2s_s"].is_null())
      s.lifetime_2s = Time::from(j["lifetime_2s_s"].get<double>(), units::second);
    validate(s);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw RegistryFormatError(std::string("species entry: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw RegistryFormatError(e.what());
  }
}

}  // namespace

UnknownSpeciesError::UnknownSpeciesError(const std::string& name,
                                         const std::vector<std::string>& available)
    : std::invalid_argument("unknown species '" + name + "'; available: " + join(available) +
                            ", He-like(Z=<n>)") {}

void validate(const SpeciesData& s) {
  if (!(s.delta_eg.au() > 0.0)) throw std::invalid_argument(s.name + ": delta_eg must be positive");
  if (!(s.e_2p > s.delta_eg)) throw std::invalid_argument(s.name + ": e_2p must lie above delta_eg");
  if (s.z < 1) throw std::invalid_argument(s.name + ": z must be positive");
  if (s.d4_eg_au && !(*s.d4_eg_au > 0.0)) throw std::invalid_argument(s.name + ": d4_eg must be positive");
  if (s.lifetime_2s && !(s.lifetime_2s->au() > 0.0))
    throw std::invalid_argument(s.name + ": lifetime_2s must be positive");
}

double helium_like_screening(const SpeciesData& helium) {
  const double k = std::sqrt(kNe8DeltaEgEv / helium.delta_eg.in(units::ev));
  return (2.0 * k - 10.0) / (k - 1.0);
}

SpeciesData helium_like(const SpeciesData& helium, int z) {
  if (z < 2) throw std::invalid_argument("helium-like ions need z >= 2");
  if (z == helium.z) return helium;
  const double sigma = helium_like_screening(helium);
  const double ratio = (z - sigma) / (helium.z - sigma);
  const double scale = ratio * ratio;
  SpeciesData ion;
  ion.name = helium_like_name(z);
  ion.z = z;
  ion.delta_eg = helium.delta_eg * scale;
  ion.e_2p = helium.e_2p * scale;
  ion.f_g2p = helium.f_g2p;
  ion.f_2p2s = helium.f_2p2s;
  return ion;
}

const SpeciesRegistry& SpeciesRegistry::builtin() {
  static const SpeciesRegistry reg = [] {
    SpeciesRegistry r;
    const SpeciesData he = make_helium();
    r.entries_[he.name] = he;
    SpeciesData ne = helium_like(he, 10);
    ne.delta_eg = Energy::from(kNe8DeltaEgEv, units::ev);
    r.entries_[ne.name] = ne;
    return r;
  }();
  return reg;
}

SpeciesData SpeciesRegistry::get(const std::string& name) const {
  if (auto it = entries_.find(name); it != entries_.end()) return it->second;
  int z = 0;
  if (auto it = aliases().find(name); it != aliases().end()) {
    z = it->second;
  } else {
    static const std::regex pattern(R"(He-like\(Z=(\d+)\))");
    std::smatch m;
    if (std::regex_match(name, m, pattern)) z = std::stoi(m[1].str());
  }
  if (z >= 2) {
    if (auto it = entries_.find(helium_like_name(z)); it != entries_.end()) return it->second;
    const auto he = entries_.find("He");
    if (he == entries_.end()) throw UnknownSpeciesError(name, names());
    return helium_like(he->second, z);
  }
  throw UnknownSpeciesError(name, names());
}

std::vector<std::string> SpeciesRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : entries_) out.push_back(k);
  for (const auto& [k, _] : aliases()) out.push_back(k);
  return out;
}

std::string SpeciesRegistry::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = kRegistrySchemaVersion;
  j["species"] = nlohmann::ordered_json::array();
  for (const auto& [_, s] : entries_) j["species"].push_back(species_to_json(s));
  return j.dump(2) + "\n";
}

SpeciesRegistry SpeciesRegistry::from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw RegistryFormatError(std::string("registry parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("schema_version") || !j.contains("species"))
    throw RegistryFormatError("registry needs 'schema_version' and 'species'");
  if (j["schema_version"] != kRegistrySchemaVersion)
    throw RegistryFormatError("unsupported registry schema_version " + j["schema_version"].dump());
  SpeciesRegistry r;
  for (const auto& entry : j["species"]) {
    SpeciesData s = species_from_json(entry);
    r.entries_[s.name] = s;
  }
  return r;
}

SpeciesRegistry SpeciesRegistry::with_overrides(const std::string& json_text) {
  SpeciesRegistry r = builtin();
  r.merge(from_json(json_text));
  return r;
}

void SpeciesRegistry::merge(const SpeciesRegistry& other) {
  for (const auto& [k, v] : other.entries_) entries_[k] = v;
}

SpeciesData species(const std::string& name) { return SpeciesRegistry::builtin().get(name); }

}  // namespace attopair
