#include "attopair/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace attopair {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  if (header.empty()) throw std::invalid_argument("CSV header must not be empty");
  append(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) throw std::invalid_argument("CSV row width differs from header");
  append(fields);
}

void CsvWriter::append(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ += ',';
    out_ += csv_escape(fields[i]);
  }
  out_ += "\r\n";
}

std::string theta_curve_csv(const std::vector<ThetaPoint>& points) {
  CsvWriter w({"ratio", "theta", "method", "stderr"});
  for (const auto& p : points)
    w.row({format_double(p.ratio), format_double(p.theta), p.method, format_double(p.standard_error)});
  return w.str();
}

std::string spectrum_csv(const BiphotonSpectrum& s) {
  CsvWriter w({"omega_ev", "amplitude", "amplitude_sq"});
  for (std::size_t i = 0; i < s.grid.omega.size(); ++i)
    w.row({format_double(Energy::from_au(s.grid.omega[i]).in(units::ev)), format_double(s.amplitude[i]),
           format_double(s.amplitude_sq[i])});
  return w.str();
}

std::string correlation_csv(const CorrelationSeries& c) {
  CsvWriter w({"t_au", "t_s", "re", "im", "abs"});
  for (std::size_t i = 0; i < c.t_au.size(); ++i)
    w.row({format_double(c.t_au[i]), format_double(c.t_seconds(i)), format_double(c.value[i].real()),
           format_double(c.value[i].imag()), format_double(std::abs(c.value[i]))});
  return w.str();
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace attopair
