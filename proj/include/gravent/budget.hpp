#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gravent/quantities.hpp"
#include "gravent/rates.hpp"

namespace gravent {

enum class ChannelId {
  GasScattering,
  BlackbodyScatter,
  BlackbodyEmission,
  BlackbodyAbsorption,
  ThermalDissipation,
  PositionNoise,
  FrequencyNoise,
  ThermalOccupation,
};

inline constexpr std::array kAllChannels{
    ChannelId::GasScattering,      ChannelId::BlackbodyScatter, ChannelId::BlackbodyEmission,
    ChannelId::BlackbodyAbsorption, ChannelId::ThermalDissipation, ChannelId::PositionNoise,
    ChannelId::FrequencyNoise,     ChannelId::ThermalOccupation,
};

inline constexpr std::array kCsignChannels{
    ChannelId::GasScattering,
    ChannelId::BlackbodyScatter,
    ChannelId::BlackbodyEmission,
    ChannelId::BlackbodyAbsorption,
};

/// Short machine name used by the CLI and all file formats.
constexpr std::string_view channel_name(ChannelId id) {
  switch (id) {
    case ChannelId::GasScattering: return "gas";
    case ChannelId::BlackbodyScatter: return "bb_scatter";
    case ChannelId::BlackbodyEmission: return "bb_emission";
    case ChannelId::BlackbodyAbsorption: return "bb_absorption";
    case ChannelId::ThermalDissipation: return "thermal";
    case ChannelId::PositionNoise: return "pos_noise";
    case ChannelId::FrequencyNoise: return "freq_noise";
    case ChannelId::ThermalOccupation: return "occupation";
  }
  return "?";
}

inline std::optional<ChannelId> parse_channel(std::string_view name) {
  for (auto id : kAllChannels)
    if (channel_name(id) == name) return id;
  return std::nullopt;
}

/// Channels that apply to a protocol, in report order.
inline std::vector<ChannelId> protocol_channels(Protocol protocol) {
  if (protocol == Protocol::CsignPhase) return {kCsignChannels.begin(), kCsignChannels.end()};
  return {kAllChannels.begin(), kAllChannels.end()};
}

struct ChannelRate {
  ChannelId id;
  double rate;    // s^-1
  double margin;  // gamma_ent / rate; +inf when rate == 0

  bool margin_infinite() const noexcept { return std::isinf(margin); }
};

struct RateBudget {
  double gamma_ent = 0.0;
  std::vector<ChannelRate> channels;
  ChannelId binding_channel = ChannelId::GasScattering;
  bool feasible = false;
  std::vector<std::string> warnings;
  ComparisonMode comparison = ComparisonMode::PaperComparison;
  double total_rate = 0.0;        // sum over channels
  double aggregate_margin = 0.0;  // gamma_ent / total_rate

  const ChannelRate* find(ChannelId id) const {
    auto it = std::find_if(channels.begin(), channels.end(), [id](const ChannelRate& c) { return c.id == id; });
    return it == channels.end() ? nullptr : &*it;
  }

  double min_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& c : channels) m = std::min(m, c.margin);
    return m;
  }

  /// Smallest margin among `subset`; channels absent from the budget are ignored.
  double min_margin(std::span<const ChannelId> subset) const {
    double m = std::numeric_limits<double>::infinity();
    for (auto id : subset)
      if (auto* c = find(id)) m = std::min(m, c->margin);
    return m;
  }

  /// Channel with the smallest margin among `subset` (first one on ties).
  std::optional<ChannelId> binding_in(std::span<const ChannelId> subset) const {
    std::optional<ChannelId> best;
    double m = std::numeric_limits<double>::infinity();
    for (auto id : subset) {
      auto* c = find(id);
      if (!c) continue;
      if (!best || c->margin < m) {
        best = id;
        m = c->margin;
      }
    }
    return best;
  }

  /// Total localization rate acting on one particle's superposition
  /// (everything except the thermal-occupation threshold).
  double decoherence_rate() const {
    double s = 0.0;
    for (const auto& c : channels)
      if (c.id != ChannelId::ThermalOccupation) s += c.rate;
    return s;
  }
};

namespace detail {
inline double margin_of(double gamma_ent, double rate) {
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  return gamma_ent / rate;
}
}  // namespace detail

/// Evaluates the entanglement rate and every decoherence channel that
/// applies to the configured protocol, channel by channel.
inline RateBudget rate_budget(const ExperimentConfig& config, const PhysicalConstants& pc = kCodata) {
  config.validate();
  const Body& body = config.body;
  const Environment& env = config.environment;
  const double dx = config.geometry.delta_x();
  const double d = config.distance();
  const double m = mass(body, config.mass_mode);
  const double radius = body.radius();

  RateBudget b;
  b.comparison = config.comparison;
  b.gamma_ent = entanglement_rate(m, d, dx, config.rate_mode, pc);

  if (outside_taylor_regime(d, dx))
    b.warnings.emplace_back("delta_x >= d: higher-order terms of the interaction expansion are not negligible");

  std::vector<std::pair<ChannelId, double>> rates;
  // Gas scattering.
  rates.emplace_back(ChannelId::GasScattering, gas_scattering_rate(env.pressure(), radius, env.temperature(),
                                                                   env.gas_mass(), pc));
  if (env.pressure() > 0.0 && dx < thermal_wavelength_gas(env.temperature(), env.gas_mass(), pc))
    b.warnings.emplace_back("delta_x below the gas thermal wavelength: single-collision localization overestimates "
                            "gas decoherence");

  // Blackbody channels.
  auto photon_regime = [&](double temp, const char* which) {
    if (temp > 0.0 && dx >= thermal_wavelength_photon(temp, pc))
      b.warnings.emplace_back(std::string("delta_x >= thermal photon wavelength (") + which +
                              "): long-wavelength blackbody limit not valid");
  };
  const double lam_sc = blackbody_scatter_param(radius, env.temperature(), body.chi_re(), pc);
  const double lam_em = blackbody_emission_param(radius, body.temp_internal(), body.chi_im(), pc);
  const double lam_ab = blackbody_emission_param(radius, env.temperature(), body.chi_im(), pc);
  rates.emplace_back(ChannelId::BlackbodyScatter, lam_sc * dx * dx);
  rates.emplace_back(ChannelId::BlackbodyEmission, lam_em * dx * dx);
  rates.emplace_back(ChannelId::BlackbodyAbsorption, lam_ab * dx * dx);
  photon_regime(env.temperature(), "environment");
  photon_regime(body.temp_internal(), "internal");

  if (config.protocol == Protocol::CoupledOscillators) {
    const Oscillator& osc = *config.oscillator;
    const double w0 = osc.omega0();
    const double sigma0 = ground_state_size(m, w0, pc);
    rates.emplace_back(ChannelId::ThermalDissipation, thermal_decoherence_rate(osc.gamma(), env.temperature(), w0, pc));
    rates.emplace_back(ChannelId::PositionNoise, position_noise_heating(w0, env.pos_noise().psd(w0), sigma0));
    rates.emplace_back(ChannelId::FrequencyNoise, frequency_noise_heating(w0, env.freq_noise().psd(2.0 * w0)));
    rates.emplace_back(ChannelId::ThermalOccupation, osc.nbar() * w0);
  }

  double min_m = std::numeric_limits<double>::infinity();
  bool first = true;
  for (auto [id, rate] : rates) {
    const double margin = detail::margin_of(b.gamma_ent, rate);
    b.channels.push_back({id, rate, margin});
    b.total_rate += rate;
    if (first || margin < min_m) {
      min_m = margin;
      b.binding_channel = id;
      first = false;
    }
  }
  b.aggregate_margin = detail::margin_of(b.gamma_ent, b.total_rate);

  const bool any_entanglement = b.gamma_ent > 0.0;
  if (config.comparison == ComparisonMode::PaperComparison)
    b.feasible = any_entanglement && min_m > 1.0;
  else
    b.feasible = any_entanglement && b.aggregate_margin > 1.0;
  return b;
}

}  // namespace gravent
