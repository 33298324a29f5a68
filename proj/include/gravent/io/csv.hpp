#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "gravent/errors.hpp"

namespace gravent::io {

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return std::to_string(v);
  return {buf, end};
}

inline double parse_double(std::string_view s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError("", "not a number: '" + std::string(s) + "'");
  return v;
}

/// Three significant digits with an exponent that is a multiple of three.
inline std::string engineering(double v) {
  if (v == 0.0) return "0";
  if (!std::isfinite(v)) return format_double(v);
  int exp3 = static_cast<int>(std::floor(std::log10(std::abs(v)) / 3.0)) * 3;
  double mant = v / std::pow(10.0, exp3);
  // Rounding to 3 digits can carry into the next group (999.7 -> 1000).
  char probe[32];
  std::snprintf(probe, sizeof probe, "%.3g", mant);
  if (std::abs(std::atof(probe)) >= 1000.0) {
    exp3 += 3;
    mant /= 1000.0;
  }
  const double a = std::abs(mant);
  const int decimals = a >= 100.0 ? 0 : a >= 10.0 ? 1 : 2;
  char buf[48];
  if (exp3 == 0)
    std::snprintf(buf, sizeof buf, "%.*f", decimals, mant);
  else
    std::snprintf(buf, sizeof buf, "%.*fe%d", decimals, mant, exp3);
  return buf;
}

/// RFC 4180 field quoting.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

/// Splits one CSV record (no embedded newlines) into fields.
inline std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

}  // namespace gravent::io
