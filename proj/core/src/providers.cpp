#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "attopair/spectrum.hpp"

namespace attopair {

double DipoleChainProvider::absorption_chain(Energy) const {
  throw std::logic_error("provider '" + metadata().kind + "' has no absorption chain");
}

namespace {

class FlatProvider final : public DipoleChainProvider {
 public:
  FlatProvider(std::string species, Energy delta, double value)
      : species_(std::move(species)), delta_(delta), value_(value) {}
  double chain_sum(Energy) const override { return value_; }
  double absorption_chain(Energy) const override { return value_; }
  Energy delta_eg() const override { return delta_; }
  std::vector<double> poles() const override { return {}; }
  bool calibrated() const override { return false; }
  ProviderInfo metadata() const override {
    return {species_, "flat", "constant chain, arbitrary scale"};
  }

 private:
  std::string species_;
  Energy delta_;
  double value_;
};

struct Intermediate {
  std::string name;
  double energy;  // above the ground state, a.u.
  double chain;   // X_j, a.u.
};

class SumOverStatesProvider final : public DipoleChainProvider {
 public:
  SumOverStatesProvider(std::string species, std::string kind, std::string normalization,
                        double delta, std::vector<Intermediate> states)
      : species_(std::move(species)),
        kind_(std::move(kind)),
        normalization_(std::move(normalization)),
        delta_(delta),
        states_(std::move(states)) {}

  double chain_sum(Energy omega) const override {
    const double w = omega.au();
    double s = 0.0;
    for (const auto& j : states_) {
      const double d_ej = delta_ - j.energy;
      s += j.chain * (1.0 / (w - d_ej) + 1.0 / (j.energy - w));
    }
    return s;
  }

  double absorption_chain(Energy omega) const override {
    const double w = omega.au();
    double s = 0.0;
    for (const auto& j : states_) s += j.chain / (w - j.energy);
    return s;
  }

  Energy delta_eg() const override { return Energy::from_au(delta_); }

  std::vector<double> poles() const override {
    std::vector<double> p;
    for (const auto& j : states_) {
      p.push_back(delta_ - j.energy);
      p.push_back(j.energy);
    }
    return p;
  }

  bool calibrated() const override { return true; }
  ProviderInfo metadata() const override { return {species_, kind_, normalization_}; }

 private:
  std::string species_, kind_, normalization_;
  double delta_;
  std::vector<Intermediate> states_;
};

class ScaledProvider final : public DipoleChainProvider {
 public:
  ScaledProvider(ProviderPtr base, double s) : base_(std::move(base)), s2_(s * s) {}
  double chain_sum(Energy omega) const override {
    return base_->chain_sum(omega / s2_) / (s2_ * s2_);
  }
  double absorption_chain(Energy omega) const override {
    return base_->absorption_chain(omega / s2_) / (s2_ * s2_);
  }
  Energy delta_eg() const override { return base_->delta_eg() * s2_; }
  std::vector<double> poles() const override {
    auto p = base_->poles();
    for (double& x : p) x *= s2_;
    return p;
  }
  bool calibrated() const override { return base_->calibrated(); }
  ProviderInfo metadata() const override {
    ProviderInfo info = base_->metadata();
    std::ostringstream os;
    os.precision(17);
    os << "scaled(" << info.kind << ", s^2=" << s2_ << ")";
    info.kind = os.str();
    return info;
  }

 private:
  ProviderPtr base_;
  double s2_;
};

}  // namespace

ProviderPtr provider_flat(const SpeciesData& species, double value) {
  if (!(species.delta_eg.au() > 0.0)) throw ProviderError("flat provider needs delta_eg > 0");
  return std::make_shared<FlatProvider>(species.name, species.delta_eg, value);
}

double pole_chain_product(const SpeciesData& s) {
  const double d_jg = s.e_2p.au();
  const double d_je = (s.e_2p - s.delta_eg).au();
  if (!(d_jg > 0.0) || !(d_je > 0.0))
    throw ProviderError(s.name + ": pole provider needs e_2p > delta_eg > 0");
  if (s.f_g2p == 0.0 || s.f_2p2s == 0.0)
    throw ProviderError(s.name + ": pole provider needs both oscillator strengths");
  const double z_gj = std::sqrt(std::abs(s.f_g2p) / (2.0 * d_jg));
  const double z_je = std::sqrt(std::abs(s.f_2p2s) / (2.0 * d_je));
  return 3.0 * z_gj * z_je;
}

ProviderPtr provider_pole(const SpeciesData& species) {
  const double x = pole_chain_product(species);
  return std::make_shared<SumOverStatesProvider>(
      species.name, "pole", "X = 3 z_gj z_je from oscillator strengths (a.u.)",
      species.delta_eg.au(), std::vector<Intermediate>{{"1s2p", species.e_2p.au(), x}});
}

ProviderPtr provider_tabulated(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProviderError(std::string("provider table parse error: ") + e.what());
  }
  try {
    if (j.at("schema_version").get<int>() != 1)
      throw ProviderError("provider table: unsupported schema_version");
    const double delta = Energy::from(j.at("delta_eg_ev").get<double>(), units::ev).au();
    if (!(delta > 0.0)) throw ProviderError("provider table: delta_eg_ev must be positive");
    std::vector<Intermediate> states;
    for (const auto& s : j.at("states")) {
      Intermediate st{s.value("name", std::string("state")),
                      Energy::from(s.at("energy_ev").get<double>(), units::ev).au(),
                      s.at("chain_au").get<double>()};
      states.push_back(st);
    }
    if (states.empty()) throw ProviderError("provider table: no states");
    return std::make_shared<SumOverStatesProvider>(j.at("species").get<std::string>(), "tabulated",
                                                   "tabulated X_j (a.u.)", delta, states);
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(std::string("provider table: ") + e.what());
  }
}

ProviderPtr provider_scaled(ProviderPtr base, double s) {
  if (!base) throw ProviderError("provider_scaled: null base");
  if (!(s > 0.0)) throw ProviderError("provider_scaled: scale must be positive");
  return std::make_shared<ScaledProvider>(std::move(base), s);
}

ProviderPtr make_provider(const std::string& kind, const SpeciesData& species) {
  if (kind == "flat") return provider_flat(species);
  if (kind == "pole") return provider_pole(species);
  if (kind.rfind("tabulated:", 0) == 0) {
    const std::string path = kind.substr(10);
    std::ifstream in(path);
    if (!in) throw ProviderError("cannot open provider table '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return provider_tabulated(ss.str());
  }
  throw ProviderError("unknown provider '" + kind + "' (expected flat, pole, tabulated:<path>)");
}

}  // namespace attopair
