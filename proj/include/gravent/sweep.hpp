#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "gravent/budget.hpp"
#include "gravent/errors.hpp"
#include "gravent/feasibility/solver.hpp"

namespace gravent {

enum class AxisScale { Log, Linear };

struct SweepAxis {
  Unknown unknown;
  double min;
  double max;
  int points;
  AxisScale scale = AxisScale::Log;

  void validate(const char* name) const {
    if (!(min < max)) throw ConfigError(std::string(name) + ".min", "must be < max");
    if (points < 2) throw ConfigError(std::string(name) + ".points", "must be >= 2");
    if (scale == AxisScale::Log && !(min > 0.0)) throw ConfigError(std::string(name) + ".min", "log axis needs min > 0");
  }

  std::vector<double> coordinates() const {
    std::vector<double> v(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
      const double f = static_cast<double>(i) / (points - 1);
      if (i == points - 1)
        v[i] = max;
      else if (scale == AxisScale::Log)
        v[i] = min * std::pow(max / min, f);
      else
        v[i] = min + f * (max - min);
    }
    return v;
  }
};

struct SweepOutputs {
  bool grid_csv = true;
  bool frontier_csv = true;
  bool svg = true;
};

struct SweepSpec {
  ExperimentConfig base;
  SweepAxis axis1;
  SweepAxis axis2;
  std::vector<ChannelId> channels;  // empty: every protocol channel
  SweepOutputs outputs;

  void validate() const {
    axis1.validate("axis1");
    axis2.validate("axis2");
    if (axis1.unknown == axis2.unknown) throw ConfigError("axis2.unknown", "must differ from axis1.unknown");
    resolve_channels(base, channels);
  }
};

struct SweepCell {
  bool valid = false;
  bool feasible = false;
  double min_margin = 0.0;
  ChannelId binding = ChannelId::GasScattering;
  std::string error;
};

struct SweepGrid {
  SweepAxis axis1;
  SweepAxis axis2;
  std::vector<double> x1;
  std::vector<double> x2;
  std::vector<SweepCell> cells;  // row-major: index i * x2.size() + j

  const SweepCell& at(std::size_t i, std::size_t j) const { return cells[i * x2.size() + j]; }
  SweepCell& at(std::size_t i, std::size_t j) { return cells[i * x2.size() + j]; }

  double invalid_fraction() const {
    if (cells.empty()) return 0.0;
    const auto bad = std::count_if(cells.begin(), cells.end(), [](const SweepCell& c) { return !c.valid; });
    return static_cast<double>(bad) / static_cast<double>(cells.size());
  }
};

namespace detail {

inline SweepCell evaluate_cell(const SweepSpec& spec, std::span<const ChannelId> channels, double v1, double v2,
                               const PhysicalConstants& pc) {
  SweepCell cell;
  try {
    const auto cfg = with_unknown(with_unknown(spec.base, spec.axis1.unknown, v1), spec.axis2.unknown, v2);
    const RateBudget b = rate_budget(cfg, pc);
    cell.valid = true;
    cell.min_margin = b.min_margin(channels);
    cell.binding = b.binding_in(channels).value_or(channels.front());
    cell.feasible = b.gamma_ent > 0.0 && cell.min_margin > 1.0;
  } catch (const std::exception& e) {
    cell.error = e.what();
  }
  return cell;
}

}  // namespace detail

/// Evaluates the rate budget on the full axis1 x axis2 grid. Cells are
/// written into preallocated slots, so the result does not depend on the
/// number of worker threads. `threads == 0` uses the hardware concurrency.
inline SweepGrid run_sweep(const SweepSpec& spec, unsigned threads = 1, const PhysicalConstants& pc = kCodata) {
  spec.validate();
  const auto channels = resolve_channels(spec.base, spec.channels);
  SweepGrid grid{spec.axis1, spec.axis2, spec.axis1.coordinates(), spec.axis2.coordinates(), {}};
  const std::size_t n1 = grid.x1.size();
  const std::size_t n2 = grid.x2.size();
  grid.cells.resize(n1 * n2);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.cells.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < grid.cells.size(); k = next++)
      grid.cells[k] = detail::evaluate_cell(spec, channels, grid.x1[k / n2], grid.x2[k % n2], pc);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return grid;
}

struct FrontierPoint {
  double axis1;
  double axis2;
  ChannelId binding;
  double min_margin;  // re-evaluated at the crossing
};

struct Frontier {
  std::vector<FrontierPoint> points;
  std::vector<std::string> notes;
};

/// For every axis1 column, the axis2 value where feasibility flips, refined
/// by bisection between the straddling cells. Columns without a crossing
/// are skipped with a note.
inline Frontier frontier(const SweepSpec& spec, const SweepGrid& grid, double relative_tolerance = 1e-6,
                         const PhysicalConstants& pc = kCodata) {
  const bool any_feasible = std::any_of(grid.cells.begin(), grid.cells.end(),
                                        [](const SweepCell& c) { return c.valid && c.feasible; });
  const bool any_infeasible = std::any_of(grid.cells.begin(), grid.cells.end(),
                                          [](const SweepCell& c) { return c.valid && !c.feasible; });
  if (!any_feasible || !any_infeasible)
    throw NumericalError(std::string("frontier: grid is ") + (any_feasible ? "feasible" : "infeasible") +
                         " in every valid cell; widen the sweep ranges to straddle the boundary");

  const auto channels = resolve_channels(spec.base, spec.channels);
  const bool log2 = grid.axis2.scale == AxisScale::Log;
  Frontier out;
  for (std::size_t i = 0; i < grid.x1.size(); ++i) {
    std::size_t j = 0;
    for (; j + 1 < grid.x2.size(); ++j) {
      const auto& a = grid.at(i, j);
      const auto& b = grid.at(i, j + 1);
      if (a.valid && b.valid && a.feasible != b.feasible) break;
    }
    if (j + 1 >= grid.x2.size()) {
      out.notes.push_back("column " + std::to_string(i) + ": no feasibility crossing");
      continue;
    }
    const double v1 = grid.x1[i];
    const bool lo_feasible = grid.at(i, j).feasible;
    double lo = grid.x2[j];
    double hi = grid.x2[j + 1];
    auto cell = [&](double v2) { return detail::evaluate_cell(spec, channels, v1, v2, pc); };
    for (int it = 0; it < 200; ++it) {
      const double width = log2 ? hi / lo - 1.0 : (hi - lo) / std::max(std::abs(lo), std::abs(hi));
      if (width <= relative_tolerance) break;
      const double mid = log2 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
      const SweepCell c = cell(mid);
      ((c.valid && c.feasible == lo_feasible) ? lo : hi) = mid;
    }
    const double x = log2 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    const SweepCell c = cell(x);
    out.points.push_back({v1, x, c.binding, c.min_margin});
  }
  std::stable_sort(out.points.begin(), out.points.end(),
                   [](const FrontierPoint& a, const FrontierPoint& b) { return a.axis1 < b.axis1; });
  return out;
}

}  // namespace gravent
