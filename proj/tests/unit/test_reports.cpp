#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "attopair/json_locate.hpp"
#include "attopair/schemes.hpp"

using namespace attopair;

TEST(SchemeConfigJson, DefaultsWhenEmpty) {
  EXPECT_EQ(scheme_config_from_json("{}"), SchemeConfig{});
}

TEST(SchemeConfigJson, ReadsKnownKeys) {
  const SchemeConfig c = scheme_config_from_json(R"({
    "species": "Ne8+",
    "pressure_bar": 2.5,
    "atoms_in_focus": 1e10,
    "sweep_window": "symmetric"
  })");
  EXPECT_EQ(c.species, "Ne8+");
  EXPECT_EQ(c.pressure_bar, 2.5);
  ASSERT_TRUE(c.atoms_in_focus.has_value());
  EXPECT_EQ(*c.atoms_in_focus, 1e10);
  EXPECT_EQ(c.sweep_window, "symmetric");
}

TEST(SchemeConfigJson, UnknownKeyHasPosition) {
  try {
    scheme_config_from_json("{\n  \"pressure_bar\": 1.0,\n  \"presure_bar\": 2.0\n}");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 3);
    EXPECT_NE(std::string(e.what()).find("presure_bar"), std::string::npos);
  }
}

TEST(SchemeConfigJson, WrongTypeHasPosition) {
  try {
    scheme_config_from_json("{\"spot_diameter_um\": \"wide\"}");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 2);
  }
}

TEST(SchemeConfigJson, SyntaxErrorHasPosition) {
  try {
    scheme_config_from_json("{\n  \"pressure_bar\": 1.0,,\n}");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_GT(e.column(), 0);
  }
}

TEST(SchemeConfigJson, ValidationFailures) {
  EXPECT_THROW(scheme_config_from_json(R"({"pressure_bar": -1})"), ConfigError);
  EXPECT_THROW(scheme_config_from_json(R"({"sweep_window": "sideways"})"), ConfigError);
  EXPECT_THROW(scheme_config_from_json(R"({"rabi_units": "furlongs"})"), ConfigError);
  EXPECT_THROW(scheme_config_from_json("[1, 2]"), ConfigError);
}

TEST(SchemeConfigJson, NestedObjectUsesBase) {
  const std::string text = "{\n  \"schemes\": {\n    \"scrap\": {\n      \"repetition_rate_hz\": 1e4\n    }\n  }\n}";
  SchemeConfig base;
  base.species = "Ne8+";
  const SchemeConfig c = scheme_config_from_json(text, {"schemes", "scrap"}, base);
  EXPECT_EQ(c.species, "Ne8+");
  EXPECT_EQ(c.repetition_rate_hz, 1e4);
  try {
    scheme_config_from_json("{\"schemes\": {\"scrap\": {\"bogus\": 1}}}", {"schemes", "scrap"}, SchemeConfig{});
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 24);
  }
}

TEST(SchemeConfigJson, RoundTrip) {
  SchemeConfig c;
  c.scheme = SchemeId::etpa;
  c.species = "He";
  c.number_density_cm3 = 3e18;
  c.molecules.reset();
  c.density_per_bar_cm3.reset();
  c.spectral_profile = "gaussian";
  SchemeConfig back = scheme_config_from_json(to_json(c));
  EXPECT_EQ(back, c);
}

TEST(LocateJsonKey, FindsNestedKeysAndIndices) {
  const std::string text = "{\n  \"a\": {\"b\": [10, {\"c\": 1}]},\n  \"d\": 2\n}";
  const auto b = locate_json_key(text, {"a", "b"});
  ASSERT_TRUE(b);
  EXPECT_EQ(b->line, 2);
  EXPECT_EQ(b->column, 9);
  const auto c = locate_json_key(text, {"a", "b", "1", "c"});
  ASSERT_TRUE(c);
  EXPECT_EQ(c->line, 2);
  EXPECT_EQ(c->column, 20);
  EXPECT_FALSE(locate_json_key(text, {"zzz"}));
  // Escaped quotes inside strings do not confuse the scanner.
  const auto d = locate_json_key("{\"x\": \"a\\\"b\", \"y\": 1}", {"y"});
  ASSERT_TRUE(d);
  EXPECT_EQ(d->column, 15);
  const TextPosition p = position_of("ab\ncd", 4);
  EXPECT_EQ(p.line, 2);
  EXPECT_EQ(p.column, 2);
}

TEST(FocalAtoms, OverridePrecedence) {
  SchemeConfig c;
  const double volume = std::numbers::pi * 0.005 * 0.005 * 0.1;
  EXPECT_NEAR(focal_atoms(c) / (1e19 * volume), 1.0, 1e-12);
  c.pressure_bar = 2.0;
  EXPECT_NEAR(focal_atoms(c) / (2e19 * volume), 1.0, 1e-12);
  c.number_density_cm3 = 5e17;
  EXPECT_NEAR(focal_atoms(c) / (5e17 * volume), 1.0, 1e-12);
  c.atoms_in_focus = 123.0;
  EXPECT_EQ(focal_atoms(c), 123.0);
}

TEST(FocalAtoms, IdealGasFallback) {
  SchemeConfig c;
  c.density_per_bar_cm3.reset();
  const double kb = 1.380649e-23;
  const double n = 1e5 / (kb * 293.0) * 1e-6;
  const double volume = std::numbers::pi * 0.005 * 0.005 * 0.1;
  EXPECT_NEAR(focal_atoms(c) / (n * volume), 1.0, 1e-9);
}

TEST(RateReportJson, RoundTripsEveryScheme) {
  for (SchemeId id : all_schemes()) {
    SchemeConfig c;
    c.scheme = id;
    const RateReport r = compute_report(c);
    const RateReport back = rate_report_from_json(to_json(r));
    EXPECT_EQ(back, r) << to_string(id);
    EXPECT_EQ(back.schema_version, kReportSchemaVersion);
  }
}

TEST(RateReportJson, RejectsBadDocuments) {
  EXPECT_THROW(rate_report_from_json("{}"), ConfigError);
  EXPECT_THROW(rate_report_from_json("nope"), ConfigError);
  std::string text = to_json(compute_report(SchemeConfig{}));
  text.replace(text.find("\"schema_version\": 1"), 19, "\"schema_version\": 9");
  EXPECT_THROW(rate_report_from_json(text), ConfigError);
}

TEST(RateReportJson, EntriesCarryUnitsAndFormulas) {
  const RateReport r = compute_report(SchemeConfig{});
  for (const auto& e : r.entries) {
    EXPECT_FALSE(e.unit.empty()) << e.key;
    EXPECT_FALSE(e.provenance.empty()) << e.key;
    EXPECT_TRUE(std::isfinite(e.value)) << e.key;
  }
  EXPECT_FALSE(r.binding_constraint.empty());
}
