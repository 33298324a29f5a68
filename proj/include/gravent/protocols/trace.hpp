#pragma once

#include <cmath>
#include <optional>
#include <ostream>
#include <vector>

#include "gravent/budget.hpp"
#include "gravent/io/csv.hpp"
#include "gravent/protocols/csign.hpp"
#include "gravent/protocols/gaussian.hpp"

namespace gravent {

/// Sampled run of one of the protocol simulators. `delta_phi` is NaN for
/// the oscillator protocol, which has no branch phase.
struct SimTrace {
  std::vector<double> t;
  std::vector<double> delta_phi;
  std::vector<double> negativity;
  std::vector<double> log_negativity;
  bool uses_negativity = true;  // which column the onset detector reads

  std::size_t size() const noexcept { return t.size(); }
};

inline constexpr double kOnsetLevel = 1e-6;

/// Time of the first sample whose entanglement measure exceeds `level`.
inline std::optional<double> entanglement_onset(const SimTrace& tr, double level = kOnsetLevel) {
  const auto& m = tr.uses_negativity ? tr.negativity : tr.log_negativity;
  for (std::size_t i = 0; i < tr.size(); ++i)
    if (m[i] > level) return tr.t[i];
  return std::nullopt;
}

namespace detail {
inline std::vector<double> sample_times(double t_max, int samples) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max", "must be > 0");
  if (samples < 2) throw ConfigError("samples", "must be >= 2");
  std::vector<double> t(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) t[i] = i == samples - 1 ? t_max : t_max * i / (samples - 1);
  return t;
}
}  // namespace detail

/// Branch-state simulation of the phase protocol. Without an explicit
/// `gamma_dec` the per-particle rate is the total decoherence of the budget.
inline SimTrace simulate_csign(const ExperimentConfig& c, double t_max, int samples,
                               std::optional<double> gamma_dec = std::nullopt, const PhysicalConstants& pc = kCodata) {
  c.validate();
  const double m = mass(c.body, c.mass_mode);
  const double d = c.distance();
  const double dx = c.geometry.delta_x();
  const double g = gamma_dec.value_or(rate_budget(c, pc).decoherence_rate());
  SimTrace tr;
  tr.t = detail::sample_times(t_max, samples);
  for (double t : tr.t) {
    const BranchState s = csign_evolve(m, d, dx, g, t, pc);
    const double n = negativity_two_qubit(s.rho);
    tr.delta_phi.push_back(csign_phases(m, d, dx, t, pc).delta);
    tr.negativity.push_back(n);
    tr.log_negativity.push_back(std::log2(1.0 + 2.0 * n));
  }
  return tr;
}

/// Covariance-matrix simulation of two coupled oscillators. Without an
/// explicit `coupling` the gravitational x1 x2 rate of the configuration is
/// used. Damping and bath follow the oscillator gamma and T_e.
inline SimTrace simulate_oscillator(const ExperimentConfig& c, double t_max, int samples,
                                    std::optional<double> coupling = std::nullopt,
                                    const PhysicalConstants& pc = kCodata) {
  c.validate();
  if (!c.oscillator) throw ConfigError("oscillator", "required for the oscillator simulation");
  const Oscillator& osc = *c.oscillator;
  const double w0 = osc.omega0();
  const double g = coupling.value_or(gravitational_coupling_rate(mass(c.body, c.mass_mode), c.distance(), w0, pc));
  SimTrace tr;
  tr.uses_negativity = false;
  tr.t = detail::sample_times(t_max, samples);

  const double interval = tr.t[1] - tr.t[0];
  const double sub = std::ceil(interval * w0 / 0.1);
  if (sub > 1e7) throw ConfigError("t_max", "too many propagation steps per sample; raise samples or lower t_max");
  const long substeps = std::max(1L, static_cast<long>(sub));
  const GaussianPropagator prop(w0, g, osc.gamma(), bath_occupation(c.environment.temperature(), w0, pc),
                                interval / static_cast<double>(substeps));

  GaussianTwoMode s = gaussian_init(osc.nbar(), osc.eta());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (i > 0)
      for (long k = 0; k < substeps; ++k) prop.step(s);
    const double en = log_negativity_gaussian(s);
    tr.delta_phi.push_back(std::nan(""));
    tr.log_negativity.push_back(en);
    tr.negativity.push_back(0.5 * (std::exp2(en) - 1.0));
  }
  return tr;
}

inline void write_trace_csv(std::ostream& os, const SimTrace& tr) {
  os << "t_s,delta_phi_rad,negativity,E_N\r\n";
  for (std::size_t i = 0; i < tr.size(); ++i) {
    os << io::format_double(tr.t[i]) << ',' << (std::isnan(tr.delta_phi[i]) ? "" : io::format_double(tr.delta_phi[i]))
       << ',' << io::format_double(tr.negativity[i]) << ',' << io::format_double(tr.log_negativity[i]) << "\r\n";
  }
}

}  // namespace gravent
