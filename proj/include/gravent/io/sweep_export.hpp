#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "gravent/io/csv.hpp"
#include "gravent/sweep.hpp"

namespace gravent::io {

inline void write_grid_csv(std::ostream& os, const SweepGrid& g) {
  os << "axis1_" << unknown_name(g.axis1.unknown) << ",axis2_" << unknown_name(g.axis2.unknown)
     << ",valid,feasible,min_margin,binding_channel,error\r\n";
  for (std::size_t i = 0; i < g.x1.size(); ++i) {
    for (std::size_t j = 0; j < g.x2.size(); ++j) {
      const SweepCell& c = g.at(i, j);
      os << format_double(g.x1[i]) << ',' << format_double(g.x2[j]) << ',' << (c.valid ? 1 : 0) << ','
         << (c.feasible ? 1 : 0) << ',' << (c.valid ? format_double(c.min_margin) : "") << ','
         << (c.valid ? channel_name(c.binding) : "") << ',' << csv_field(c.error) << "\r\n";
    }
  }
}

/// Inverse of write_grid_csv. Axis metadata other than the unknowns and the
/// coordinates is not stored in the file.
inline SweepGrid read_grid_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("grid.csv", "empty file");
  const auto head = csv_split(line);
  if (head.size() != 7 || head[0].rfind("axis1_", 0) != 0 || head[1].rfind("axis2_", 0) != 0)
    throw ConfigError("grid.csv", "unexpected header");
  auto u1 = parse_unknown(head[0].substr(6));
  auto u2 = parse_unknown(head[1].substr(6));
  if (!u1 || !u2) throw ConfigError("grid.csv", "unknown axis name in header");

  SweepGrid g{{*u1, 0, 0, 0}, {*u2, 0, 0, 0}, {}, {}, {}};
  std::vector<std::pair<double, double>> coords;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = csv_split(line);
    if (f.size() != 7) throw ConfigError("grid.csv", "row with " + std::to_string(f.size()) + " fields");
    coords.emplace_back(parse_double(f[0]), parse_double(f[1]));
    SweepCell c;
    c.valid = f[2] == "1";
    c.feasible = f[3] == "1";
    if (c.valid) {
      c.min_margin = parse_double(f[4]);
      auto id = parse_channel(f[5]);
      if (!id) throw ConfigError("grid.csv", "unknown channel '" + f[5] + "'");
      c.binding = *id;
    }
    c.error = f[6];
    g.cells.push_back(std::move(c));
  }
  // Rows are axis1-major, so the first block of rows carries every axis2 value.
  for (const auto& [a, b] : coords) {
    if (g.x1.empty() || g.x1.back() != a) g.x1.push_back(a);
    if (g.x1.size() == 1) g.x2.push_back(b);
  }
  for (std::size_t k = 0; k < coords.size() && !g.x2.empty(); ++k)
    if (coords[k].first != g.x1[k / g.x2.size()] || coords[k].second != g.x2[k % g.x2.size()])
      throw ConfigError("grid.csv", "row " + std::to_string(k + 2) + " out of grid order");
  if (g.x1.size() * g.x2.size() != g.cells.size()) throw ConfigError("grid.csv", "rows do not form a full grid");
  g.axis1.points = static_cast<int>(g.x1.size());
  g.axis2.points = static_cast<int>(g.x2.size());
  if (!g.x1.empty()) {
    g.axis1.min = g.x1.front();
    g.axis1.max = g.x1.back();
    g.axis2.min = g.x2.front();
    g.axis2.max = g.x2.back();
  }
  return g;
}

inline void write_frontier_csv(std::ostream& os, const SweepGrid& g, const Frontier& f) {
  os << "axis1_" << unknown_name(g.axis1.unknown) << ",axis2_" << unknown_name(g.axis2.unknown)
     << ",binding_channel,min_margin\r\n";
  for (const auto& p : f.points)
    os << format_double(p.axis1) << ',' << format_double(p.axis2) << ',' << channel_name(p.binding) << ','
       << format_double(p.min_margin) << "\r\n";
}

namespace detail {

struct AxisMap {
  const SweepAxis& axis;
  double lo_px;
  double hi_px;

  double t(double v) const {
    if (axis.scale == AxisScale::Log) return (std::log10(v) - std::log10(axis.min)) / (std::log10(axis.max) - std::log10(axis.min));
    return (v - axis.min) / (axis.max - axis.min);
  }
  double px(double v) const { return lo_px + t(v) * (hi_px - lo_px); }
};

inline std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

/// Edges of the cells around each coordinate, midway in scale space.
inline std::vector<double> cell_edges(const std::vector<double>& x, AxisScale scale) {
  auto fwd = [&](double v) { return scale == AxisScale::Log ? std::log10(v) : v; };
  auto inv = [&](double v) { return scale == AxisScale::Log ? std::pow(10.0, v) : v; };
  std::vector<double> e(x.size() + 1);
  for (std::size_t i = 1; i < x.size(); ++i) e[i] = inv(0.5 * (fwd(x[i - 1]) + fwd(x[i])));
  e.front() = x.front();
  e.back() = x.back();
  return e;
}

inline std::vector<double> ticks(const SweepAxis& a) {
  std::vector<double> t;
  if (a.scale == AxisScale::Log) {
    const int lo = static_cast<int>(std::ceil(std::log10(a.min) - 1e-9));
    const int hi = static_cast<int>(std::floor(std::log10(a.max) + 1e-9));
    const int step = std::max(1, (hi - lo) / 8 + 1);
    for (int k = lo; k <= hi; k += step) t.push_back(std::pow(10.0, k));
  } else {
    for (int k = 0; k <= 4; ++k) t.push_back(a.min + (a.max - a.min) * k / 4.0);
  }
  return t;
}

inline std::string tick_label(double v, AxisScale s) {
  if (s == AxisScale::Log) return "1e" + std::to_string(static_cast<int>(std::lround(std::log10(v))));
  return fmt("%.3g", v);
}

}  // namespace detail

/// Feasibility heat map with the frontier polyline on top.
inline void write_svg(std::ostream& os, const SweepGrid& g, const Frontier& f) {
  constexpr double W = 720, H = 540, L = 90, R = 30, T = 30, B = 70;
  const detail::AxisMap mx{g.axis1, L, W - R};
  const detail::AxisMap my{g.axis2, H - B, T};
  using detail::fmt;

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"540\" viewBox=\"0 0 720 540\">\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"720\" height=\"540\" fill=\"white\"/>\n";
  os << "  <g id=\"cells\" stroke=\"none\">\n";
  const auto ex = detail::cell_edges(g.x1, g.axis1.scale);
  const auto ey = detail::cell_edges(g.x2, g.axis2.scale);
  for (std::size_t i = 0; i < g.x1.size(); ++i) {
    for (std::size_t j = 0; j < g.x2.size(); ++j) {
      const SweepCell& c = g.at(i, j);
      const char* colour = !c.valid ? "#bdbdbd" : c.feasible ? "#81c784" : "#e57373";
      const double x0 = mx.px(ex[i]), x1 = mx.px(ex[i + 1]);
      const double y0 = my.px(ey[j + 1]), y1 = my.px(ey[j]);
      os << "    <rect x=\"" << fmt("%.2f", x0) << "\" y=\"" << fmt("%.2f", y0) << "\" width=\""
         << fmt("%.2f", x1 - x0) << "\" height=\"" << fmt("%.2f", y1 - y0) << "\" fill=\"" << colour << "\"/>\n";
    }
  }
  os << "  </g>\n";

  if (!f.points.empty()) {
    os << "  <polyline id=\"frontier\" fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < f.points.size(); ++k) {
      if (k) os << ' ';
      os << fmt("%.2f", mx.px(f.points[k].axis1)) << ',' << fmt("%.2f", my.px(f.points[k].axis2));
    }
    os << "\"/>\n";
  }

  os << "  <g id=\"axes\" stroke=\"black\" fill=\"none\">\n";
  os << "    <line x1=\"" << fmt("%.2f", L) << "\" y1=\"" << fmt("%.2f", H - B) << "\" x2=\"" << fmt("%.2f", W - R)
     << "\" y2=\"" << fmt("%.2f", H - B) << "\"/>\n";
  os << "    <line x1=\"" << fmt("%.2f", L) << "\" y1=\"" << fmt("%.2f", H - B) << "\" x2=\"" << fmt("%.2f", L)
     << "\" y2=\"" << fmt("%.2f", T) << "\"/>\n";
  os << "  </g>\n";
  os << "  <g id=\"labels\" font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  for (double v : detail::ticks(g.axis1))
    os << "    <text x=\"" << fmt("%.2f", mx.px(v)) << "\" y=\"" << fmt("%.2f", H - B + 18)
       << "\" text-anchor=\"middle\">" << detail::tick_label(v, g.axis1.scale) << "</text>\n";
  for (double v : detail::ticks(g.axis2))
    os << "    <text x=\"" << fmt("%.2f", L - 6) << "\" y=\"" << fmt("%.2f", my.px(v) + 4)
       << "\" text-anchor=\"end\">" << detail::tick_label(v, g.axis2.scale) << "</text>\n";
  os << "    <text x=\"" << fmt("%.2f", 0.5 * (L + W - R)) << "\" y=\"" << fmt("%.2f", H - 20)
     << "\" text-anchor=\"middle\">" << unknown_name(g.axis1.unknown) << " [" << unknown_unit(g.axis1.unknown)
     << "]</text>\n";
  os << "    <text x=\"20\" y=\"" << fmt("%.2f", 0.5 * (T + H - B)) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
     << fmt("%.2f", 0.5 * (T + H - B)) << ")\">" << unknown_name(g.axis2.unknown) << " ["
     << unknown_unit(g.axis2.unknown) << "]</text>\n";
  os << "  </g>\n";
  os << "</svg>\n";
}

/// Opens `path` for writing or throws std::runtime_error naming it.
inline std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  return os;
}

inline void check_written(std::ofstream& os, const std::string& path) {
  os.flush();
  if (!os) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace gravent::io
