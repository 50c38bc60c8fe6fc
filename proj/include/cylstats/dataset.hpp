#pragma once

// CSV ingestion and export for circular-linear observations.  Files carry
// two numeric columns with an optional `theta,x` header; values are written
// with 17 significant digits so a write/read cycle is bit-exact.

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cylstats/types.hpp"

namespace cylstats {

enum class AngleUnit { radians, degrees };

inline const char* angle_unit_name(AngleUnit unit) {
  return unit == AngleUnit::radians ? "radians" : "degrees";
}

inline AngleUnit angle_unit_from_name(std::string_view name) {
  if (name == "radians") return AngleUnit::radians;
  if (name == "degrees") return AngleUnit::degrees;
  throw std::invalid_argument("unknown angle unit: " + std::string(name));
}

struct Dataset {
  std::vector<CylObservation> observations;
  AngleUnit angle_unit = AngleUnit::radians;
  std::string source_path;
};

namespace dataset_detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline bool parse_double(std::string_view token, double& out) {
  token = trim(token);
  if (token.empty()) return false;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

inline bool is_header_line(std::string_view line) {
  std::string lowered;
  for (char c : line)
    if (c != ' ' && c != '\t' && c != '\r')
      lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return lowered == "theta,x";
}

}  // namespace dataset_detail

// Reads a two-column CSV of (angle, linear value) observations.  Degrees are
// converted to radians; angles are normalized to [-pi, pi).
inline Dataset load_csv(const std::string& path, AngleUnit unit) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_csv: cannot open " + path);

  Dataset ds;
  ds.angle_unit = unit;
  ds.source_path = path;

  std::string line;
  std::size_t line_number = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string_view trimmed = dataset_detail::trim(line);
    if (trimmed.empty()) continue;
    if (first_content_line && dataset_detail::is_header_line(trimmed)) {
      first_content_line = false;
      continue;
    }
    first_content_line = false;
    const std::size_t comma = trimmed.find(',');
    double theta = 0.0, x = 0.0;
    if (comma == std::string_view::npos ||
        !dataset_detail::parse_double(trimmed.substr(0, comma), theta) ||
        !dataset_detail::parse_double(trimmed.substr(comma + 1), x)) {
      throw std::runtime_error("load_csv: malformed row at " + path + ":" +
                               std::to_string(line_number));
    }
    if (unit == AngleUnit::degrees) theta *= pi / 180.0;
    try {
      ds.observations.emplace_back(theta, x);
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("load_csv: non-finite value at " + path + ":" +
                               std::to_string(line_number));
    }
  }
  if (ds.observations.empty())
    throw std::runtime_error("load_csv: no observations in " + path);
  return ds;
}

// Writes observations as `theta,x` rows in radians, 17 significant digits.
inline void write_csv(std::ostream& out,
                      std::span<const CylObservation> observations) {
  out << "theta,x\n";
  char buffer[64];
  for (const auto& obs : observations) {
    std::snprintf(buffer, sizeof(buffer), "%.17g,%.17g", obs.theta, obs.x);
    out << buffer << '\n';
  }
}

inline void save_csv(const std::string& path,
                     std::span<const CylObservation> observations) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_csv: cannot open " + path);
  write_csv(out, observations);
  if (!out) throw std::runtime_error("save_csv: write failure on " + path);
}

}  // namespace cylstats
