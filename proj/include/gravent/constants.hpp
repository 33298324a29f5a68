#pragma once

#include <numbers>

namespace gravent {

/// SI physical constants (CODATA 2018). Passed explicitly through every
/// formula so that tests can run the whole pipeline with perturbed values.
struct PhysicalConstants {
  double G = 6.67430e-11;         // m^3 kg^-1 s^-2
  double hbar = 1.054571817e-34;  // J s
  double k_B = 1.380649e-23;      // J K^-1
  double c = 299792458.0;         // m s^-1
  double m_H2 = 2.01588 * 1.66053906660e-27;   // kg
  double m_Si = 28.0855 * 1.66053906660e-27;   // kg
};

inline constexpr PhysicalConstants kCodata{};

inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
inline constexpr double kHelium4Mass = 4.002602 * kAtomicMassUnit;

/// Riemann zeta(9).
inline constexpr double kZeta9 = 1.0020083928260822144;
/// 8!
inline constexpr double kFactorial8 = 40320.0;

inline constexpr double kPi = std::numbers::pi;

namespace units {

inline constexpr double kPascalPerMbar = 100.0;

constexpr double mbar_to_pa(double mbar) { return mbar * kPascalPerMbar; }
constexpr double pa_to_mbar(double pa) { return pa / kPascalPerMbar; }
constexpr double hz_to_rad_s(double f) { return 2.0 * kPi * f; }
constexpr double rad_s_to_hz(double w) { return w / (2.0 * kPi); }

}  // namespace units
}  // namespace gravent
