#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gravent/budget.hpp"
#include "gravent/errors.hpp"
#include "gravent/quantities.hpp"

namespace gravent {

/// Configuration fields the solver and the sweep can vary.
enum class Unknown {
  DeltaX,
  Pressure,
  TempEnvironment,
  TempInternal,
  Radius,
  Gamma,
  PosNoiseAmp,   // sqrt(S_x) at omega0 [m Hz^-1/2]
  FreqNoiseAmp,  // sqrt(S_omega) at 2 omega0 [Hz^-1/2]
  Nbar,
};

inline constexpr std::array kAllUnknowns{Unknown::DeltaX,     Unknown::Pressure, Unknown::TempEnvironment,
                                         Unknown::TempInternal, Unknown::Radius,   Unknown::Gamma,
                                         Unknown::PosNoiseAmp,  Unknown::FreqNoiseAmp, Unknown::Nbar};

constexpr std::string_view unknown_name(Unknown u) {
  switch (u) {
    case Unknown::DeltaX: return "delta_x";
    case Unknown::Pressure: return "pressure";
    case Unknown::TempEnvironment: return "temp_env";
    case Unknown::TempInternal: return "temp_internal";
    case Unknown::Radius: return "radius";
    case Unknown::Gamma: return "gamma";
    case Unknown::PosNoiseAmp: return "pos_noise";
    case Unknown::FreqNoiseAmp: return "freq_noise";
    case Unknown::Nbar: return "nbar";
  }
  return "?";
}

constexpr std::string_view unknown_unit(Unknown u) {
  switch (u) {
    case Unknown::DeltaX: return "m";
    case Unknown::Pressure: return "Pa";
    case Unknown::TempEnvironment:
    case Unknown::TempInternal: return "K";
    case Unknown::Radius: return "m";
    case Unknown::Gamma: return "s^-1";
    case Unknown::PosNoiseAmp: return "m/sqrt(Hz)";
    case Unknown::FreqNoiseAmp: return "1/sqrt(Hz)";
    case Unknown::Nbar: return "";
  }
  return "";
}

inline std::optional<Unknown> parse_unknown(std::string_view name) {
  for (auto u : kAllUnknowns)
    if (unknown_name(u) == name) return u;
  return std::nullopt;
}

namespace detail {
inline const Oscillator& require_oscillator(const ExperimentConfig& c, Unknown u) {
  if (!c.oscillator) throw ConfigError("oscillator", std::string("unknown '") + std::string(unknown_name(u)) +
                                                         "' needs an oscillator section");
  return *c.oscillator;
}
}  // namespace detail

/// Current value of `u` in `config`.
inline double unknown_value(const ExperimentConfig& c, Unknown u) {
  switch (u) {
    case Unknown::DeltaX: return c.geometry.delta_x();
    case Unknown::Pressure: return c.environment.pressure();
    case Unknown::TempEnvironment: return c.environment.temperature();
    case Unknown::TempInternal: return c.body.temp_internal();
    case Unknown::Radius: return c.body.radius();
    case Unknown::Gamma: return detail::require_oscillator(c, u).gamma();
    case Unknown::PosNoiseAmp: {
      const double w0 = detail::require_oscillator(c, u).omega0();
      return c.environment.pos_noise().asd(w0);
    }
    case Unknown::FreqNoiseAmp: {
      const double w0 = detail::require_oscillator(c, u).omega0();
      return c.environment.freq_noise().asd(2.0 * w0);
    }
    case Unknown::Nbar: return detail::require_oscillator(c, u).nbar();
  }
  return 0.0;
}

/// Copy of `config` with `u` set to `value`. Noise amplitudes are set at the
/// frequency they are evaluated at, keeping the power-law exponent.
inline ExperimentConfig with_unknown(ExperimentConfig c, Unknown u, double value) {
  switch (u) {
    case Unknown::DeltaX: c.geometry = c.geometry.with_delta_x(value); break;
    case Unknown::Pressure: c.environment = c.environment.with_pressure(value); break;
    case Unknown::TempEnvironment: c.environment = c.environment.with_temperature(value); break;
    case Unknown::TempInternal: c.body = c.body.with_temp_internal(value); break;
    case Unknown::Radius: c.body = c.body.with_radius(value); break;
    case Unknown::Gamma: c.oscillator = detail::require_oscillator(c, u).with_gamma(value); break;
    case Unknown::PosNoiseAmp: {
      const double w0 = detail::require_oscillator(c, u).omega0();
      c.environment = c.environment.with_pos_noise(
          NoiseModel::from_asd(value, w0, c.environment.pos_noise().scaling_exponent()));
      break;
    }
    case Unknown::FreqNoiseAmp: {
      const double w0 = detail::require_oscillator(c, u).omega0();
      c.environment = c.environment.with_freq_noise(
          NoiseModel::from_asd(value, 2.0 * w0, c.environment.freq_noise().scaling_exponent()));
      break;
    }
    case Unknown::Nbar: c.oscillator = detail::require_oscillator(c, u).with_nbar(value); break;
  }
  return c;
}

/// Starting scale for the bracket search when the config holds no positive value.
constexpr double default_scale(Unknown u) {
  switch (u) {
    case Unknown::DeltaX: return 1e-6;
    case Unknown::Pressure: return 1e-15;
    case Unknown::TempEnvironment:
    case Unknown::TempInternal: return 1.0;
    case Unknown::Radius: return 1e-6;
    case Unknown::Gamma: return 1e-3;
    case Unknown::PosNoiseAmp: return 1e-16;
    case Unknown::FreqNoiseAmp: return 1e-4;
    case Unknown::Nbar: return 0.5;
  }
  return 1.0;
}

enum class BoundDirection { UpperBound, LowerBound };

struct BoundResult {
  Unknown unknown;
  double threshold;
  BoundDirection direction;
  ChannelId channel;  // binding at the threshold
  double bracket_lo;
  double bracket_hi;
  int iterations;
};

struct SolveOptions {
  std::optional<double> initial_guess;  // overrides the config value as bracket centre
  double relative_tolerance = 1e-10;
  double max_decades = 60.0;  // total bracket span before giving up
  int grid_points = 64;       // monotonicity probe
  int max_iterations = 400;
};

/// Channels to use: `requested` if nonempty, otherwise every protocol channel.
inline std::vector<ChannelId> resolve_channels(const ExperimentConfig& config, std::span<const ChannelId> requested) {
  const auto available = protocol_channels(config.protocol);
  if (requested.empty()) return available;
  for (auto id : requested)
    if (std::find(available.begin(), available.end(), id) == available.end())
      throw ConfigError("channel", std::string(channel_name(id)) + " does not apply to this protocol");
  return {requested.begin(), requested.end()};
}

/// log of the smallest margin over `channels` with `u` set to `x`.
inline double log_min_margin(const ExperimentConfig& config, Unknown u, double x, std::span<const ChannelId> channels,
                             const PhysicalConstants& pc = kCodata) {
  const RateBudget b = rate_budget(with_unknown(config, u, x), pc);
  return std::log(b.min_margin(channels));
}

/// Finds the value of `u` at which the smallest margin over `channels`
/// equals one, by log-space bisection on a geometrically expanded bracket.
inline BoundResult solve_bound(const ExperimentConfig& config, Unknown u, std::span<const ChannelId> requested = {},
                               const SolveOptions& opt = {}, const PhysicalConstants& pc = kCodata) {
  const std::vector<ChannelId> channels = resolve_channels(config, requested);
  double centre = opt.initial_guess.value_or(unknown_value(config, u));
  if (!(centre > 0.0) || !std::isfinite(centre)) centre = default_scale(u);

  auto f = [&](double x) { return log_min_margin(config, u, x, channels, pc); };
  // Evaluations outside the admissible region (e.g. R > d/2) end the
  // expansion on that side.
  auto try_f = [&](double x) -> std::optional<double> {
    try {
      return f(x);
    } catch (const ConfigError&) {
      return std::nullopt;
    } catch (const DomainError&) {
      return std::nullopt;
    }
  };

  double lo = centre / 10.0;
  double hi = centre * 10.0;
  auto flo = try_f(lo);
  auto fhi = try_f(hi);
  if (!flo || !fhi) {
    // Shrink toward the centre until both ends are admissible.
    lo = centre;
    hi = centre;
    flo = fhi = try_f(centre);
    if (!flo) throw DomainError("solve_bound: configuration is not admissible at the starting value");
  }
  bool lo_open = true;
  bool hi_open = true;
  auto feasible = [](double v) { return v > 0.0; };
  while (feasible(*flo) == feasible(*fhi) && std::log10(hi / lo) < opt.max_decades && (lo_open || hi_open)) {
    if (lo_open) {
      if (auto v = try_f(lo / 10.0)) {
        lo /= 10.0;
        flo = v;
      } else {
        lo_open = false;
      }
    }
    if (feasible(*flo) != feasible(*fhi)) break;
    if (hi_open) {
      if (auto v = try_f(hi * 10.0)) {
        hi *= 10.0;
        fhi = v;
      } else {
        hi_open = false;
      }
    }
  }
  if (feasible(*flo) == feasible(*fhi)) {
    const bool ok = feasible(*flo);
    throw NoCrossingError(ok ? NoCrossingError::Kind::FeasibleEverywhere : NoCrossingError::Kind::InfeasibleEverywhere,
                          std::string("solve_bound: no crossing for ") + std::string(unknown_name(u)) + " in [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]: " +
                              (ok ? "feasible everywhere" : "infeasible everywhere"));
  }

  // Monotonicity probe on a log grid; also narrows the bracket to one cell.
  const int n = std::max(opt.grid_points, 2);
  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  int changes = 0;
  double cell_lo = lo;
  double cell_hi = hi;
  bool prev = feasible(*flo);
  double prev_x = lo;
  for (int i = 1; i < n; ++i) {
    const double x = i == n - 1 ? hi : std::exp(log_lo + (log_hi - log_lo) * i / (n - 1));
    const bool cur = i == n - 1 ? feasible(*fhi) : feasible(f(x));
    if (cur != prev) {
      ++changes;
      cell_lo = prev_x;
      cell_hi = x;
    }
    prev = cur;
    prev_x = x;
  }
  if (changes > 1)
    throw NumericalError("solve_bound: margin is not monotone in " + std::string(unknown_name(u)) + " (" +
                         std::to_string(changes) + " sign changes on a " + std::to_string(n) + "-point grid)");

  const bool feasible_above = !feasible(*flo);
  double a = cell_lo;
  double b = cell_hi;
  int it = 0;
  while (b / a - 1.0 > opt.relative_tolerance && it < opt.max_iterations) {
    const double mid = std::sqrt(a * b);
    const bool ok = feasible(f(mid));
    ((ok == feasible_above) ? b : a) = mid;
    ++it;
  }
  const double threshold = std::sqrt(a * b);
  const RateBudget at = rate_budget(with_unknown(config, u, threshold), pc);
  return {u,
          threshold,
          feasible_above ? BoundDirection::LowerBound : BoundDirection::UpperBound,
          at.binding_in(channels).value_or(channels.front()),
          lo,
          hi,
          it};
}

inline RateBudget evaluate(const ExperimentConfig& config, const PhysicalConstants& pc = kCodata) {
  return rate_budget(config, pc);
}

}  // namespace gravent
