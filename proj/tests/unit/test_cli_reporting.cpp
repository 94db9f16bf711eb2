#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "attopair/csv.hpp"
#include "attopair/repro.hpp"
#include "attopair/scenario.hpp"

using namespace attopair;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("attopair_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

const char* kSmallScenario = R"({
  "name": "small",
  "species": "He",
  "seed": 7,
  "geometry": {"aspect_ratios": [1, 3, 10], "rel_tol": 1e-8, "mc_ratios": [3], "mc_samples": 20000},
  "spectrum": {"provider": "pole", "omega_points": 1024, "t_max_au": 20, "t_points": 401},
  "schemes": {"scrap": {"repetition_rate_hz": 1e4}, "etpa": {}},
  "outputs": {"repro_table": null}
})";

}  // namespace

TEST(Csv, FormatDouble) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1e-300), "1e-300");
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Csv, EscapeRules) {
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_escape("two\nlines"), "\"two\nlines\"");
}

TEST(Csv, WriterRoundTrip) {
  CsvWriter w({"name", "value"});
  w.row({"a,b", "1"});
  w.row({"quote\"d", "multi\r\nline"});
  EXPECT_THROW(w.row({"only one"}), std::invalid_argument);
  const auto rows = parse_csv(w.str());
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"name", "value"}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"a,b", "1"}));
  EXPECT_EQ(rows[2], (std::vector<std::string>{"quote\"d", "multi\r\nline"}));
  EXPECT_NE(w.str().find("\r\n"), std::string::npos);
}

TEST(Csv, ThetaCurveColumns) {
  const std::vector<ThetaPoint> pts{{1.0, 23.39, "quadrature", 0.0}, {2.0, 15.0, "mc", 0.01}};
  const auto rows = parse_csv(theta_curve_csv(pts));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"ratio", "theta", "method", "stderr"}));
  EXPECT_EQ(rows[2][2], "mc");
  EXPECT_EQ(std::stod(rows[2][3]), 0.01);
}

TEST(Scenario, ParsesBundledFile) {
  const Scenario s = load_scenario(std::string(ATTOPAIR_SOURCE_DIR) + "/scenarios/paper_repro.json");
  EXPECT_EQ(s.name, "paper_repro");
  EXPECT_EQ(s.seed, 42u);
  EXPECT_EQ(s.geometry.aspect_ratios.size(), 25u);
  EXPECT_DOUBLE_EQ(s.geometry.aspect_ratios.back(), 148.0);
  EXPECT_EQ(s.schemes.size(), 5u);
  EXPECT_EQ(s.spectrum.t_points % 2, 1u);
}

TEST(Scenario, MissingFileIsConfigError) {
  const ScenarioStatus st = run_scenario("/nonexistent/scenario.json", fresh_dir("missing").string());
  EXPECT_EQ(st.exit_code, 2);
  EXPECT_TRUE(st.written.empty());
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), ConfigError);
}

TEST(Scenario, UnknownKeyReportsPosition) {
  try {
    parse_scenario("{\n  \"name\": \"x\",\n  \"geometry\": {\"rel_tol\": 1e-8, \"colour\": 3}\n}");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 33);
  }
  EXPECT_THROW(parse_scenario("{}"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"name": "x", "spectrum": {"t_points": 400}})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"name": "x", "schemes": {"warp": {}}})"), ConfigError);
}

TEST(Scenario, SchemeErrorsPointIntoScenario) {
  try {
    parse_scenario("{\"name\": \"x\",\n \"schemes\": {\"etpa\": {\"molecules\": \"many\"}}}");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_GT(e.column(), 1);
  }
}

TEST(Scenario, WritesArtifactsDeterministically) {
  const Scenario s = parse_scenario(kSmallScenario);
  const fs::path a = fresh_dir("run_a"), b = fresh_dir("run_b");
  const ScenarioStatus sa = run_scenario(s, a.string());
  const ScenarioStatus sb = run_scenario(s, b.string());
  ASSERT_EQ(sa.exit_code, 0) << sa.message;
  ASSERT_EQ(sb.exit_code, 0) << sb.message;
  for (const char* name : {"fig_s1.csv", "fig2.csv", "spectrum.csv", "rates_scrap.json", "rates_etpa.json"}) {
    ASSERT_TRUE(fs::exists(a / name)) << name;
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  }
  EXPECT_FALSE(fs::exists(a / "repro_table.json"));
  const auto fig = parse_csv(slurp(a / "fig_s1.csv"));
  ASSERT_EQ(fig.size(), 5u);  // header, three quadrature rows, one mc row
  EXPECT_EQ(fig[4][2], "mc");
  const auto rates = rate_report_from_json(slurp(a / "rates_scrap.json"));
  EXPECT_EQ(rates.scheme, "scrap");
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Scenario, NumericalFailureExitCode) {
  Scenario s = parse_scenario(kSmallScenario);
  s.spectrum.t_max_au = 5000.0;  // under-resolved by the omega grid
  s.spectrum.t_points = 101;
  const ScenarioStatus st = run_scenario(s, fresh_dir("numerical").string());
  EXPECT_EQ(st.exit_code, 3);
  EXPECT_FALSE(st.message.empty());
}

TEST(Repro, TableStructure) {
  ReproOptions o;
  o.mc_samples = 20000;
  const ReproTable t = repro_report(o);
  for (int c = 1; c <= 7; ++c) EXPECT_FALSE(t.criterion(c).empty()) << "criterion " << c;
  EXPECT_NEAR(t.at("C1.sphere").computed, 64.0 * M_PI * M_PI / 27.0, 1e-7);
  EXPECT_TRUE(t.at("C1.sphere").pass);
  EXPECT_TRUE(t.at("C5.alpha4").pass);
  EXPECT_EQ(t.at("C5.alpha4").tolerance_class, ToleranceClass::exact_formula);
  EXPECT_EQ(t.at("C4.he_rate").tolerance_class, ToleranceClass::order_of_magnitude);
  EXPECT_THROW(t.at("C9.none"), std::out_of_range);

  const auto j = nlohmann::json::parse(t.to_json());
  EXPECT_EQ(j.at("schema_version").get<int>(), kReproSchemaVersion);
  EXPECT_EQ(j.at("rows").size(), t.rows.size());
  const std::string pretty = t.pretty();
  EXPECT_NE(pretty.find("claims pass"), std::string::npos);
  EXPECT_EQ(to_string(ToleranceClass::shape_only), "shape-only");
}
