#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "attopair/registry.hpp"

using namespace attopair;

TEST(Registry, HeliumEntry) {
  const SpeciesData he = species("He");
  EXPECT_NEAR(he.delta_eg.in(units::ev), 20.62, 1e-12);
  EXPECT_NEAR(he.e_2p.in(units::ev), 21.22, 1e-12);
  EXPECT_EQ(he.f_g2p, 0.28);
  EXPECT_EQ(he.f_2p2s, -0.36);
  ASSERT_TRUE(he.d4_eg_au.has_value());
  EXPECT_EQ(*he.d4_eg_au, 149.0);
  ASSERT_TRUE(he.lifetime_2s.has_value());
  EXPECT_NEAR(he.lifetime_2s->in(units::second), 0.0197, 1e-15);
  EXPECT_EQ(he.z, 2);
}

TEST(Registry, NeonLikeIon) {
  const SpeciesData ne = species("He-like(Z=10)");
  EXPECT_NEAR(ne.delta_eg.in(units::ev), 915.0, 1e-9);
  EXPECT_EQ(ne.z, 10);
  EXPECT_EQ(species("Ne8+"), ne);
  EXPECT_GT(ne.e_2p, ne.delta_eg);
}

TEST(Registry, ScreenedScalingHitsNeonAtZTen) {
  const SpeciesData he = species("He");
  const SpeciesData scaled = helium_like(he, 10);
  EXPECT_NEAR(scaled.delta_eg.in(units::ev), 915.0, 1e-9);
  const double sigma = helium_like_screening(he);
  const double expect = 20.62 * std::pow((10.0 - sigma) / (2.0 - sigma), 2);
  EXPECT_NEAR(scaled.delta_eg.in(units::ev), expect, 1e-9);
}

TEST(Registry, GapGrowsWithNuclearCharge) {
  double last = species("He").delta_eg.au();
  for (int z = 3; z <= 12; ++z) {
    const double d = species("He-like(Z=" + std::to_string(z) + ")").delta_eg.au();
    EXPECT_GT(d, last) << z;
    last = d;
  }
  EXPECT_EQ(species("N5+").z, 7);
  EXPECT_EQ(species("O6+").z, 8);
}

TEST(Registry, UnknownSpeciesListsNames) {
  try {
    species("Xe");
    FAIL();
  } catch (const UnknownSpeciesError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("He"), std::string::npos);
    EXPECT_NE(msg.find("Ne8+"), std::string::npos);
  }
}

TEST(Registry, RepeatedReadsAreIdentical) { EXPECT_EQ(species("He"), species("He")); }

TEST(Registry, JsonRoundTrip) {
  const SpeciesRegistry& reg = SpeciesRegistry::builtin();
  const SpeciesRegistry back = SpeciesRegistry::from_json(reg.to_json());
  EXPECT_EQ(back.to_json(), reg.to_json());
  EXPECT_EQ(back.get("He"), reg.get("He"));
}

TEST(Registry, BundledFileMatchesBuiltins) {
  std::ifstream f(std::string(ATTOPAIR_SOURCE_DIR) + "/core/data/species.json");
  ASSERT_TRUE(f);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), SpeciesRegistry::builtin().to_json());
}

TEST(Registry, OverridesMergeOverBuiltins) {
  const std::string text = R"({"schema_version": 1, "species": [
    {"name": "He", "z": 2, "delta_eg_ev": 20.62, "e_2p_ev": 21.22, "f_g2p": 0.3, "f_2p2s": -0.36,
     "d4_eg_au": 150.0, "lifetime_2s_s": 0.0197}]})";
  const SpeciesRegistry reg = SpeciesRegistry::with_overrides(text);
  EXPECT_EQ(reg.get("He").f_g2p, 0.3);
  EXPECT_EQ(*reg.get("He").d4_eg_au, 150.0);
  EXPECT_NO_THROW(reg.get("Ne8+"));
}

TEST(Registry, RejectsMalformedFiles) {
  EXPECT_THROW(SpeciesRegistry::from_json("{"), RegistryFormatError);
  EXPECT_THROW(SpeciesRegistry::from_json(R"({"schema_version": 2, "species": []})"), RegistryFormatError);
  EXPECT_THROW(SpeciesRegistry::from_json(R"({"schema_version": 1, "species": [{"name": "X", "bogus": 1}]})"),
               RegistryFormatError);
  // delta_eg above e_2p violates the helium-entry ordering
  EXPECT_THROW(SpeciesRegistry::from_json(R"({"schema_version": 1, "species": [
    {"name": "Bad", "z": 2, "delta_eg_ev": 22.0, "e_2p_ev": 21.22, "f_g2p": 0.28, "f_2p2s": -0.36,
     "d4_eg_au": null, "lifetime_2s_s": null}]})"),
               std::exception);
}

TEST(Registry, ValidateChecksInvariants) {
  SpeciesData s = species("He");
  EXPECT_NO_THROW(validate(s));
  s.d4_eg_au = -1.0;
  EXPECT_THROW(validate(s), std::invalid_argument);
  s = species("He");
  s.delta_eg = Energy::from_au(-0.1);
  EXPECT_THROW(validate(s), std::invalid_argument);
}
