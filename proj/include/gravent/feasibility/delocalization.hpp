#pragma once

#include <optional>
#include <vector>

#include "gravent/feasibility/solver.hpp"

namespace gravent {

struct DelocalizationEntry {
  enum class Kind {
    LowerBound,      // channel satisfied for delta_x > bound
    UpperBound,      // channel satisfied for delta_x < bound
    AlwaysFeasible,  // margin independent of delta_x and above one
    NeverFeasible,   // margin independent of delta_x and below one
  };
  ChannelId channel;
  Kind kind;
  double bound = 0.0;  // meaningful for LowerBound / UpperBound
};

struct DelocalizationReport {
  double delta_x_min = 0.0;
  std::optional<ChannelId> binding;  // channel setting delta_x_min
  std::vector<DelocalizationEntry> entries;
  bool feasible = true;
  std::vector<ChannelId> blocking;  // channels no delta_x >= delta_x_min can satisfy
};

/// Per-channel smallest delocalization and their maximum. Channels whose
/// margin does not depend on delta_x are reported as pass/fail.
inline DelocalizationReport required_delocalization(const ExperimentConfig& config,
                                                    std::span<const ChannelId> requested = {},
                                                    const PhysicalConstants& pc = kCodata) {
  DelocalizationReport rep;
  for (ChannelId id : resolve_channels(config, requested)) {
    const std::array one{id};
    DelocalizationEntry e{id, DelocalizationEntry::Kind::AlwaysFeasible};
    try {
      const BoundResult r = solve_bound(config, Unknown::DeltaX, one, {}, pc);
      e.kind = r.direction == BoundDirection::LowerBound ? DelocalizationEntry::Kind::LowerBound
                                                         : DelocalizationEntry::Kind::UpperBound;
      e.bound = r.threshold;
    } catch (const NoCrossingError& nc) {
      e.kind = nc.kind() == NoCrossingError::Kind::FeasibleEverywhere ? DelocalizationEntry::Kind::AlwaysFeasible
                                                                      : DelocalizationEntry::Kind::NeverFeasible;
    }
    if (e.kind == DelocalizationEntry::Kind::LowerBound && e.bound > rep.delta_x_min) {
      rep.delta_x_min = e.bound;
      rep.binding = id;
    }
    rep.entries.push_back(e);
  }
  for (const auto& e : rep.entries) {
    const bool blocks = e.kind == DelocalizationEntry::Kind::NeverFeasible ||
                        (e.kind == DelocalizationEntry::Kind::UpperBound && e.bound <= rep.delta_x_min);
    if (blocks) {
      rep.feasible = false;
      rep.blocking.push_back(e.channel);
    }
  }
  return rep;
}

/// Wavepacket expansion delta_x / sigma0 needed to reach `delta_x_min`.
inline double eta_required(const ExperimentConfig& config, double delta_x_min, const PhysicalConstants& pc = kCodata) {
  if (!config.oscillator) throw ConfigError("oscillator", "eta_required needs an oscillator section");
  const double sigma0 = ground_state_size(mass(config.body, config.mass_mode), config.oscillator->omega0(), pc);
  return delta_x_min / sigma0;
}

}  // namespace gravent
