#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "attopair/cavity.hpp"
#include "attopair/spectrum.hpp"

namespace attopair {

/// Shortest round-trip decimal form, independent of the C locale.
std::string format_double(double v);

/// RFC 4180 field quoting: quotes fields containing ',', '"', CR or LF.
std::string csv_escape(std::string_view field);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  /// Throws std::invalid_argument when the column count differs from the header.
  void row(const std::vector<std::string>& fields);
  const std::string& str() const { return out_; }

 private:
  std::size_t columns_;
  std::string out_;
  void append(const std::vector<std::string>& fields);
};

/// ratio, theta, method, stderr
std::string theta_curve_csv(const std::vector<ThetaPoint>& points);
/// omega_ev, amplitude, amplitude_sq
std::string spectrum_csv(const BiphotonSpectrum& s);
/// t_au, t_s, re, im, abs
std::string correlation_csv(const CorrelationSeries& c);

/// Splits CSV text into rows of unquoted fields (inverse of CsvWriter).
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace attopair
