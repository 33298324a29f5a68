#pragma once

#include <cmath>
#include <numbers>
#include <utility>

#include "gravent/constants.hpp"
#include "gravent/errors.hpp"
#include "gravent/quantities.hpp"

namespace gravent {

// Entanglement generation ---------------------------------------------------

/// Rate of gravitational phase-difference accumulation between two masses m
/// at distance d, each delocalized over delta_x.
///
/// PaperApprox is the leading Taylor term (G/hbar) m^2 dx^2 / d^3. Exact is
/// the magnitude of the exact phase-difference rate
/// (G m^2 / hbar) (1/d - 1/sqrt(d^2 + dx^2)), which tends to half of the
/// approximation for dx << d.
inline double entanglement_rate(double m, double d, double delta_x, RateMode mode = RateMode::PaperApprox,
                                const PhysicalConstants& pc = kCodata) {
  if (!(m > 0.0)) throw DomainError("entanglement_rate: mass must be > 0");
  if (!(d > 0.0)) throw DomainError("entanglement_rate: distance must be > 0");
  if (!(delta_x >= 0.0)) throw DomainError("entanglement_rate: delta_x must be >= 0");
  const double coupling = pc.G * m * m / pc.hbar;
  if (mode == RateMode::PaperApprox) return coupling * delta_x * delta_x / (d * d * d);
  // 1/d - 1/sqrt(d^2+dx^2) = (u / (1+sqrt(1+u))) / (d sqrt(1+u)), u = (dx/d)^2,
  // written without the cancellation of the naive difference.
  const double u = (delta_x / d) * (delta_x / d);
  const double s = std::sqrt(1.0 + u);
  return coupling * u / ((1.0 + s) * s * d);
}

/// True when the superposition is no smaller than the separation, where the
/// leading Taylor term no longer describes the interaction.
inline bool outside_taylor_regime(double d, double delta_x) { return delta_x >= d; }

inline double entanglement_rate_parametrized(const Body& body, double alpha, double delta_x,
                                             MassMode mass_mode = MassMode::PaperApprox,
                                             RateMode rate_mode = RateMode::PaperApprox,
                                             const PhysicalConstants& pc = kCodata) {
  if (!(alpha > 1.0)) throw DomainError("entanglement_rate_parametrized: alpha must be > 1");
  return entanglement_rate(mass(body, mass_mode), 2.0 * body.radius() * alpha, delta_x, rate_mode, pc);
}

/// (G/hbar) (2 rho^2 / alpha^3) R^3 dx^2: the same rate with m = 4 R^3 rho
/// and d = 2 R alpha substituted by hand.
inline double entanglement_rate_closed_form(const Body& body, double alpha, double delta_x,
                                            const PhysicalConstants& pc = kCodata) {
  const double r = body.radius();
  const double rho = body.density();
  return (pc.G / pc.hbar) * (2.0 * rho * rho / (alpha * alpha * alpha)) * r * r * r * delta_x * delta_x;
}

// Decoherence -----------------------------------------------------------------

/// Localization rate from rest-gas collisions: (lambda_th / hbar)(16 pi / 3) p R^2.
inline double gas_scattering_rate(double pressure, double radius, double temp_env, double gas_mass,
                                  const PhysicalConstants& pc = kCodata) {
  if (!(pressure >= 0.0) || !(radius >= 0.0)) throw DomainError("gas_scattering_rate: inputs must be >= 0");
  if (pressure == 0.0) return 0.0;
  if (!(temp_env > 0.0)) throw DomainError("gas_scattering_rate: gas temperature must be > 0 when p > 0");
  const double lambda = thermal_wavelength_gas(temp_env, gas_mass, pc);
  return (lambda / pc.hbar) * (16.0 * kPi / 3.0) * pressure * radius * radius;
}

namespace detail {
inline double inverse_photon_wavelength(double T, const PhysicalConstants& pc) {
  return pc.k_B * T / (std::cbrt(kPi * kPi) * pc.hbar * pc.c);
}
}  // namespace detail

/// Blackbody scattering localization parameter [m^-2 s^-1]:
/// (1/lambda_th)^9 (8! 8 zeta(9) pi^5 c R^6 / 9) chi_re^2.
inline double blackbody_scatter_param(double radius, double temp, double chi_re,
                                      const PhysicalConstants& pc = kCodata) {
  if (!(radius >= 0.0) || !(temp >= 0.0)) throw DomainError("blackbody_scatter_param: inputs must be >= 0");
  const double k = detail::inverse_photon_wavelength(temp, pc);
  const double r6 = std::pow(radius, 6);
  constexpr double pi5 = kPi * kPi * kPi * kPi * kPi;
  return std::pow(k, 9) * (kFactorial8 * 8.0 * kZeta9 * pi5 * pc.c * r6 / 9.0) * chi_re * chi_re;
}

/// Blackbody emission (temp = internal) or absorption (temp = environment)
/// localization parameter: (1/lambda_th)^6 (16 pi^9 c R^3 / 189) chi_im.
inline double blackbody_emission_param(double radius, double temp, double chi_im,
                                       const PhysicalConstants& pc = kCodata) {
  if (!(radius >= 0.0) || !(temp >= 0.0)) throw DomainError("blackbody_emission_param: inputs must be >= 0");
  const double k = detail::inverse_photon_wavelength(temp, pc);
  const double pi9 = std::pow(kPi, 9);
  return std::pow(k, 6) * (16.0 * pi9 * pc.c * radius * radius * radius / 189.0) * chi_im;
}

enum class Regime { Valid, Invalid };

struct LocalizationRate {
  double rate;
  Regime regime;
};

/// Long-wavelength decoherence rate Lambda dx^2. The regime is Invalid once
/// dx reaches the environmental wavelength.
inline LocalizationRate localization_rate(double lambda_param, double delta_x, double lambda_th) {
  if (!(lambda_param >= 0.0) || !(delta_x >= 0.0) || !(lambda_th >= 0.0))
    throw DomainError("localization_rate: inputs must be >= 0");
  return {lambda_param * delta_x * delta_x, delta_x >= lambda_th ? Regime::Invalid : Regime::Valid};
}

/// gamma k_B T_e / (hbar omega0)
inline double thermal_decoherence_rate(double gamma, double temp_env, double omega0,
                                       const PhysicalConstants& pc = kCodata) {
  if (!(omega0 > 0.0)) throw DomainError("thermal_decoherence_rate: omega0 must be > 0");
  return gamma * pc.k_B * temp_env / (pc.hbar * omega0);
}

/// Heating from trap-position noise, pi omega0^2 S_x(omega0) / (4 sigma0^2).
inline double position_noise_heating(double omega0, double s_x_at_omega0, double sigma0) {
  if (!(sigma0 > 0.0)) throw DomainError("position_noise_heating: sigma0 must be > 0");
  return kPi * omega0 * omega0 * s_x_at_omega0 / (4.0 * sigma0 * sigma0);
}

/// Heating from fractional trap-frequency noise, pi omega0^2 S_omega(2 omega0) / 16.
inline double frequency_noise_heating(double omega0, double s_omega_at_2omega0) {
  if (!(s_omega_at_2omega0 >= 0.0)) throw DomainError("frequency_noise_heating: PSD must be >= 0");
  return kPi * omega0 * omega0 * s_omega_at_2omega0 / 16.0;
}

/// Closed-form logarithmic negativity estimate (4 g/omega0 - 4 nbar) / ln 2
/// with the coupling g taken as the entanglement rate. Can be negative.
inline double log_negativity_estimate(double gamma_ent, double omega0, double nbar) {
  if (!(omega0 > 0.0)) throw DomainError("log_negativity_estimate: omega0 must be > 0");
  if (!(nbar >= 0.0)) throw DomainError("log_negativity_estimate: nbar must be >= 0");
  return (4.0 * gamma_ent / omega0 - 4.0 * nbar) / std::numbers::ln2;
}

// Newtonian basics ------------------------------------------------------------

/// Accelerations of a test mass at x0 from a source mass located at x_L or x_R.
inline std::pair<double, double> feynman_accelerations(double m_source, double x_left, double x_right, double x0,
                                                       const PhysicalConstants& pc = kCodata) {
  const double dl = x_left - x0;
  const double dr = x_right - x0;
  if (dl == 0.0 || dr == 0.0) throw DomainError("feynman_accelerations: source and test positions coincide");
  return {pc.G * m_source / (dl * dl), pc.G * m_source / (dr * dr)};
}

/// Magnitude G m / r of the Newtonian potential.
inline double newtonian_potential(double m, double r, const PhysicalConstants& pc = kCodata) {
  if (!(r > 0.0)) throw DomainError("newtonian_potential: r must be > 0");
  return pc.G * m / r;
}

}  // namespace gravent
