#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace attopair {

enum class ToleranceClass { exact_formula, order_of_magnitude, shape_only };

std::string to_string(ToleranceClass c);

/// One published claim recomputed. `computed` uses the inputs quoted for
/// that step; `chained` (when present) carries the end-to-end value from
/// this library's own upstream results.
struct ReproRow {
  std::string id;
  int criterion = 0;
  std::string description;
  double quoted_value = 0.0;  // NaN for qualitative claims
  double computed = 0.0;
  std::optional<double> chained;
  std::string unit;
  ToleranceClass tolerance_class = ToleranceClass::exact_formula;
  std::string tolerance;
  double ratio = 0.0;  // computed / quoted_value (NaN when undefined)
  bool pass = false;
  std::string note;
};

struct ReproTable {
  std::vector<ReproRow> rows;
  /// Wall-clock seconds spent per criterion; not serialized, so reruns
  /// produce identical JSON.
  std::map<int, double> seconds;

  bool all_pass() const;
  /// Rows of one acceptance criterion.
  std::vector<ReproRow> criterion(int index) const;
  const ReproRow& at(const std::string& id) const;

  std::string to_json() const;
  std::string pretty() const;
};

inline constexpr int kReproSchemaVersion = 1;

struct ReproOptions {
  std::uint64_t seed = 42;
  std::size_t mc_samples = 1'000'000;
  unsigned workers = 0;  // 0 = hardware concurrency
};

/// Recomputes every tabulated claim. Never throws for a failed claim: the
/// row carries pass = false instead.
ReproTable repro_report(const ReproOptions& options = {});

}  // namespace attopair
