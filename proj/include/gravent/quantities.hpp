#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "gravent/constants.hpp"
#include "gravent/errors.hpp"

namespace gravent {

enum class Protocol { CsignPhase, CoupledOscillators };
enum class MassMode { PaperApprox, ExactSphere };
enum class RateMode { PaperApprox, Exact };
enum class ComparisonMode { PaperComparison, Aggregate };

namespace detail {

inline void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ConfigError(field, what);
}

inline bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }
inline bool finite_pos(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace detail

/// One source/test mass. Both masses of a pair share the same Body.
class Body {
 public:
  /// `chi_re`/`chi_im` are the real and imaginary parts of the
  /// Clausius-Mossotti factor (eps-1)/(eps+2); 1 is the worst case.
  Body(double radius_m, double density_kg_m3, double chi_re = 1.0, double chi_im = 1.0,
       double temp_internal_K = 0.0)
      : radius_(radius_m), density_(density_kg_m3), chi_re_(chi_re), chi_im_(chi_im), temp_internal_(temp_internal_K) {
    detail::require(detail::finite_pos(radius_), "radius_m", "must be > 0");
    detail::require(detail::finite_pos(density_), "density_kg_m3", "must be > 0");
    detail::require(detail::finite_nonneg(chi_re_) && chi_re_ <= 1.0, "chi_re", "must lie in [0, 1]");
    detail::require(detail::finite_nonneg(chi_im_) && chi_im_ <= 1.0, "chi_im", "must lie in [0, 1]");
    detail::require(detail::finite_nonneg(temp_internal_), "temp_internal_K", "must be >= 0");
  }

  double radius() const noexcept { return radius_; }
  double density() const noexcept { return density_; }
  double chi_re() const noexcept { return chi_re_; }
  double chi_im() const noexcept { return chi_im_; }
  double temp_internal() const noexcept { return temp_internal_; }

  Body with_radius(double r) const { return {r, density_, chi_re_, chi_im_, temp_internal_}; }
  Body with_temp_internal(double t) const { return {radius_, density_, chi_re_, chi_im_, t}; }

  friend bool operator==(const Body&, const Body&) = default;

 private:
  double radius_;
  double density_;
  double chi_re_;
  double chi_im_;
  double temp_internal_;
};

/// Power-law noise spectrum. `amplitude` is the PSD at `ref_omega`; the
/// amplitude spectral density scales as omega^-scaling_exponent, so the PSD
/// scales with twice that exponent.
class NoiseModel {
 public:
  NoiseModel() = default;

  NoiseModel(double psd_amplitude, double ref_omega, double scaling_exponent)
      : amplitude_(psd_amplitude), ref_omega_(ref_omega), exponent_(scaling_exponent) {
    detail::require(detail::finite_nonneg(amplitude_), "amplitude", "PSD must be >= 0");
    detail::require(detail::finite_pos(ref_omega_), "ref_omega", "reference frequency must be > 0");
    detail::require(std::isfinite(exponent_), "scaling", "must be finite");
  }

  static NoiseModel from_asd(double asd, double ref_omega, double scaling_exponent) {
    detail::require(detail::finite_nonneg(asd), "asd", "must be >= 0");
    return {asd * asd, ref_omega, scaling_exponent};
  }

  /// PSD at angular frequency omega > 0.
  double psd(double omega) const {
    if (amplitude_ == 0.0) return 0.0;
    if (!(omega > 0.0)) throw DomainError("NoiseModel: evaluation frequency must be > 0");
    return amplitude_ * std::pow(ref_omega_ / omega, 2.0 * exponent_);
  }
  double asd(double omega) const { return std::sqrt(psd(omega)); }

  double amplitude() const noexcept { return amplitude_; }
  double asd_amplitude() const noexcept { return std::sqrt(amplitude_); }
  double ref_omega() const noexcept { return ref_omega_; }
  double scaling_exponent() const noexcept { return exponent_; }

  NoiseModel with_asd_amplitude(double asd) const { return from_asd(asd, ref_omega_, exponent_); }

  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;

 private:
  double amplitude_ = 0.0;
  double ref_omega_ = 1.0;
  double exponent_ = 0.0;
};

inline constexpr double kDefaultPositionNoiseExponent = 2.0;
inline constexpr double kDefaultFrequencyNoiseExponent = 0.0;

class Environment {
 public:
  Environment(double pressure_Pa, double temp_K, double gas_mass_kg = kCodata.m_H2, NoiseModel pos_noise = {},
              NoiseModel freq_noise = {})
      : pressure_(pressure_Pa), temp_(temp_K), gas_mass_(gas_mass_kg), pos_noise_(pos_noise), freq_noise_(freq_noise) {
    detail::require(detail::finite_nonneg(pressure_), "pressure_Pa", "must be >= 0");
    detail::require(detail::finite_nonneg(temp_), "temp_K", "must be >= 0");
    detail::require(detail::finite_pos(gas_mass_), "gas.mass_kg", "must be > 0");
  }

  double pressure() const noexcept { return pressure_; }
  double temperature() const noexcept { return temp_; }
  double gas_mass() const noexcept { return gas_mass_; }
  const NoiseModel& pos_noise() const noexcept { return pos_noise_; }
  const NoiseModel& freq_noise() const noexcept { return freq_noise_; }

  Environment with_pressure(double p) const { return {p, temp_, gas_mass_, pos_noise_, freq_noise_}; }
  Environment with_temperature(double t) const { return {pressure_, t, gas_mass_, pos_noise_, freq_noise_}; }
  Environment with_pos_noise(NoiseModel n) const { return {pressure_, temp_, gas_mass_, n, freq_noise_}; }
  Environment with_freq_noise(NoiseModel n) const { return {pressure_, temp_, gas_mass_, pos_noise_, n}; }

  friend bool operator==(const Environment&, const Environment&) = default;

 private:
  double pressure_;
  double temp_;
  double gas_mass_;
  NoiseModel pos_noise_;
  NoiseModel freq_noise_;
};

/// Centre-of-mass separation, given either as the spacing factor alpha
/// (d = 2 R alpha) or as an absolute distance, plus the delocalization.
class PairGeometry {
 public:
  static PairGeometry from_alpha(double alpha, double delta_x_m) {
    detail::require(std::isfinite(alpha) && alpha > 1.0, "alpha", "must be > 1");
    return PairGeometry(true, alpha, delta_x_m);
  }
  static PairGeometry from_distance(double distance_m, double delta_x_m) {
    detail::require(detail::finite_pos(distance_m), "distance_m", "must be > 0");
    return PairGeometry(false, distance_m, delta_x_m);
  }

  bool given_by_alpha() const noexcept { return by_alpha_; }
  double delta_x() const noexcept { return delta_x_; }

  double distance(double radius) const { return by_alpha_ ? 2.0 * radius * value_ : value_; }
  double alpha(double radius) const { return by_alpha_ ? value_ : value_ / (2.0 * radius); }

  PairGeometry with_delta_x(double dx) const { return PairGeometry(by_alpha_, value_, dx); }

  friend bool operator==(const PairGeometry&, const PairGeometry&) = default;

 private:
  PairGeometry(bool by_alpha, double value, double dx) : by_alpha_(by_alpha), value_(value), delta_x_(dx) {
    detail::require(detail::finite_nonneg(delta_x_), "delta_x_m", "must be >= 0");
  }

  bool by_alpha_;
  double value_;
  double delta_x_;
};

class Oscillator {
 public:
  Oscillator(double omega0_rad_s, double gamma_per_s = 0.0, double nbar = 0.0, double eta = 1.0)
      : omega0_(omega0_rad_s), gamma_(gamma_per_s), nbar_(nbar), eta_(eta) {
    detail::require(detail::finite_pos(omega0_), "omega0_rad_s", "must be > 0");
    detail::require(detail::finite_nonneg(gamma_), "gamma_hz", "must be >= 0");
    detail::require(detail::finite_nonneg(nbar_), "nbar", "must be >= 0");
    detail::require(std::isfinite(eta_) && eta_ >= 1.0, "eta", "must be >= 1");
  }

  double omega0() const noexcept { return omega0_; }
  double gamma() const noexcept { return gamma_; }
  double nbar() const noexcept { return nbar_; }
  double eta() const noexcept { return eta_; }
  /// Quality factor omega0 / gamma (infinite without dissipation).
  double quality_factor() const noexcept { return omega0_ / gamma_; }
  /// Squeezing parameter s with eta = e^s.
  double squeezing() const { return std::log(eta_); }

  Oscillator with_gamma(double g) const { return {omega0_, g, nbar_, eta_}; }
  Oscillator with_nbar(double n) const { return {omega0_, gamma_, n, eta_}; }

  friend bool operator==(const Oscillator&, const Oscillator&) = default;

 private:
  double omega0_;
  double gamma_;
  double nbar_;
  double eta_;
};

struct ExperimentConfig {
  Body body;
  PairGeometry geometry;
  Environment environment;
  std::optional<Oscillator> oscillator;
  Protocol protocol = Protocol::CsignPhase;
  MassMode mass_mode = MassMode::PaperApprox;
  RateMode rate_mode = RateMode::PaperApprox;
  ComparisonMode comparison = ComparisonMode::PaperComparison;

  double distance() const { return geometry.distance(body.radius()); }

  /// Cross-field invariants; component invariants hold by construction.
  void validate() const {
    if (!(geometry.alpha(body.radius()) > 1.0))
      throw ConfigError(geometry.given_by_alpha() ? "geometry.alpha" : "geometry.distance_m",
                        "centre-of-mass distance must exceed 2R");
    if (protocol == Protocol::CoupledOscillators && !oscillator)
      throw ConfigError("oscillator", "required for the oscillator protocol");
  }

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// ---------------------------------------------------------------------------

inline double mass(const Body& body, MassMode mode = MassMode::PaperApprox) {
  const double r3 = body.radius() * body.radius() * body.radius();
  return mode == MassMode::PaperApprox ? 4.0 * r3 * body.density() : (4.0 * kPi / 3.0) * r3 * body.density();
}

/// Ground-state position uncertainty sqrt(hbar / (m omega0)).
inline double ground_state_size(double m, double omega0, const PhysicalConstants& pc = kCodata) {
  if (!(m > 0.0) || !(omega0 > 0.0)) throw DomainError("ground_state_size: mass and frequency must be > 0");
  return std::sqrt(pc.hbar / (m * omega0));
}

/// Thermal de Broglie wavelength of the rest gas.
inline double thermal_wavelength_gas(double T, double gas_mass, const PhysicalConstants& pc = kCodata) {
  if (!(T > 0.0)) throw DomainError("thermal_wavelength_gas: temperature must be > 0");
  if (!(gas_mass > 0.0)) throw DomainError("thermal_wavelength_gas: gas mass must be > 0");
  return 2.0 * kPi * pc.hbar / std::sqrt(2.0 * kPi * gas_mass * pc.k_B * T);
}

/// Thermal photon wavelength pi^(2/3) hbar c / (k_B T).
inline double thermal_wavelength_photon(double T, const PhysicalConstants& pc = kCodata) {
  if (!(T > 0.0)) throw DomainError("thermal_wavelength_photon: temperature must be > 0");
  return std::cbrt(kPi * kPi) * pc.hbar * pc.c / (pc.k_B * T);
}

inline double atom_count(double m, double atomic_mass) {
  if (!(atomic_mass > 0.0)) throw DomainError("atom_count: atomic mass must be > 0");
  return m / atomic_mass;
}

}  // namespace gravent
