#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "gravent/constants.hpp"
#include "gravent/errors.hpp"

namespace gravent {

// Two-mode Gaussian states in dimensionless quadratures (x1, p1, x2, p2)
// with vacuum covariance 1/2. Position in metres is x * sigma0.

inline Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d om = Eigen::Matrix4d::Zero();
  om(0, 1) = om(2, 3) = 1.0;
  om(1, 0) = om(3, 2) = -1.0;
  return om;
}

struct SymplecticSpectrum {
  double nu_minus;
  double nu_plus;
};

/// Symplectic eigenvalues of a covariance matrix.
///
/// For positive-definite V these are the positive eigenvalues of the
/// Hermitian matrix i V^{1/2} Omega V^{1/2}, which stays accurate when the
/// two values are (nearly) degenerate. Otherwise falls back to the local
/// invariants: nu^2 solves nu^4 - Delta nu^2 + det V = 0,
/// Delta = det A + det B + 2 det C.
inline SymplecticSpectrum symplectic_eigenvalues(const Eigen::Matrix4d& cov) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(cov);
  if (es.info() == Eigen::Success && es.eigenvalues()(0) > 0.0) {
    const Eigen::Matrix4d root = es.operatorSqrt();
    const Eigen::Matrix4cd h = std::complex<double>(0.0, 1.0) * (root * symplectic_form() * root).cast<std::complex<double>>();
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> hs(h, Eigen::EigenvaluesOnly);
    if (hs.info() == Eigen::Success) return {hs.eigenvalues()(2), hs.eigenvalues()(3)};
  }
  const double da = cov.block<2, 2>(0, 0).determinant();
  const double db = cov.block<2, 2>(2, 2).determinant();
  const double dc = cov.block<2, 2>(0, 2).determinant();
  const double delta = da + db + 2.0 * dc;
  const double det = cov.determinant();
  const double disc = std::sqrt(std::max(0.0, delta * delta - 4.0 * det));
  return {std::sqrt(std::max(0.0, 0.5 * (delta - disc))), std::sqrt(std::max(0.0, 0.5 * (delta + disc)))};
}

/// Covariance of the partially transposed state (p2 -> -p2).
inline Eigen::Matrix4d partial_transpose_cov(const Eigen::Matrix4d& cov) {
  const Eigen::Vector4d flip(1.0, 1.0, 1.0, -1.0);
  return flip.asDiagonal() * cov * flip.asDiagonal();
}

struct GaussianTwoMode {
  Eigen::Matrix4d cov = 0.5 * Eigen::Matrix4d::Identity();
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  double t = 0.0;

  /// Throws StateError unless cov is symmetric and cov + (i/2) Omega >= 0.
  void check() const {
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, cov.cwiseAbs().maxCoeff()))
      throw StateError("GaussianTwoMode: covariance is not symmetric");
    const Eigen::Matrix4cd m = cov.cast<std::complex<double>>() +
                               std::complex<double>(0.0, 0.5) * symplectic_form().cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9) throw StateError("GaussianTwoMode: violates the uncertainty principle");
  }
};

/// Product of two identical thermal states with occupation nbar, stretched
/// in x by eta (squeezing s = ln eta).
inline GaussianTwoMode gaussian_init(double nbar, double eta) {
  if (!(nbar >= 0.0)) throw DomainError("gaussian_init: nbar must be >= 0");
  if (!(eta >= 1.0)) throw DomainError("gaussian_init: eta must be >= 1");
  GaussianTwoMode s;
  const double purity = 2.0 * nbar + 1.0;
  const double vx = purity * eta * eta / 2.0;
  const double vp = purity / (2.0 * eta * eta);
  s.cov = Eigen::Vector4d(vx, vp, vx, vp).asDiagonal();
  return s;
}

/// max(0, -log2(2 nu~_-)) with nu~_- the smallest symplectic eigenvalue of
/// the partially transposed covariance.
inline double log_negativity_gaussian(const GaussianTwoMode& state) {
  state.check();
  const double nu = symplectic_eigenvalues(partial_transpose_cov(state.cov)).nu_minus;
  if (nu <= 0.0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, -std::log2(2.0 * nu));
}

/// Exact one-step propagator for H = sum (omega0/2)(x^2 + p^2) + g x1 x2
/// (in units of hbar) with local damping gamma toward occupation n_th.
///
/// dV/dt = A V + V A^T + D is integrated exactly over dt: V -> Phi V Phi^T + Q,
/// with Phi = exp(A dt) and Q from the Van Loan block exponential.
class GaussianPropagator {
 public:
  GaussianPropagator(double omega0, double coupling, double gamma, double n_thermal, double dt) : dt_(dt) {
    if (!(omega0 > 0.0)) throw DomainError("GaussianPropagator: omega0 must be > 0");
    if (!(dt > 0.0) || dt * omega0 > 0.1 * (1.0 + 1e-12))
      throw ConfigError("dt", "step size must satisfy 0 < dt*omega0 <= 0.1");
    if (!(gamma >= 0.0) || !(n_thermal >= 0.0)) throw DomainError("GaussianPropagator: gamma and n_th must be >= 0");

    Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
    a(0, 1) = omega0;
    a(1, 0) = -omega0;
    a(1, 2) = -coupling;
    a(2, 3) = omega0;
    a(3, 2) = -omega0;
    a(3, 0) = -coupling;
    a -= 0.5 * gamma * Eigen::Matrix4d::Identity();
    const Eigen::Matrix4d diff = gamma * (n_thermal + 0.5) * Eigen::Matrix4d::Identity();

    Eigen::Matrix<double, 8, 8> block = Eigen::Matrix<double, 8, 8>::Zero();
    block.topLeftCorner<4, 4>() = -a * dt;
    block.topRightCorner<4, 4>() = diff * dt;
    block.bottomRightCorner<4, 4>() = a.transpose() * dt;
    const Eigen::Matrix<double, 8, 8> e = block.exp();
    phi_ = e.bottomRightCorner<4, 4>().transpose();
    noise_ = phi_ * e.topRightCorner<4, 4>();
    noise_ = 0.5 * (noise_ + noise_.transpose()).eval();
  }

  void step(GaussianTwoMode& s) const {
    s.cov = phi_ * s.cov * phi_.transpose() + noise_;
    s.cov = 0.5 * (s.cov + s.cov.transpose()).eval();
    s.mean = phi_ * s.mean;
    s.t += dt_;
  }

  double dt() const noexcept { return dt_; }
  const Eigen::Matrix4d& transfer() const noexcept { return phi_; }

 private:
  double dt_;
  Eigen::Matrix4d phi_;
  Eigen::Matrix4d noise_;
};

/// Stationary occupation k_B T / (hbar omega0) of the damping bath.
inline double bath_occupation(double temp, double omega0, const PhysicalConstants& pc = kCodata) {
  return pc.k_B * temp / (pc.hbar * omega0);
}

inline GaussianTwoMode gaussian_evolve(GaussianTwoMode state, double omega0, double coupling, double gamma, double temp,
                                       double dt, long steps, const PhysicalConstants& pc = kCodata) {
  const GaussianPropagator prop(omega0, coupling, gamma, bath_occupation(temp, omega0, pc), dt);
  for (long i = 0; i < steps; ++i) prop.step(state);
  return state;
}

/// x1 x2 coupling rate (dimensionless quadratures) from the leading Taylor
/// term of the Newtonian interaction: G m^2 sigma0^2 / (hbar d^3) = G m / (omega0 d^3).
inline double gravitational_coupling_rate(double m, double d, double omega0, const PhysicalConstants& pc = kCodata) {
  if (!(m > 0.0) || !(d > 0.0) || !(omega0 > 0.0))
    throw DomainError("gravitational_coupling_rate: inputs must be > 0");
  return pc.G * m / (omega0 * d * d * d);
}

struct ThresholdScanOptions {
  double horizon_periods = 10.0;
  double dt_omega = 0.05;           // dt * omega0
  double detection = 1e-6;          // E_N threshold
  double relative_tolerance = 1e-6;  // on g
  int max_iterations = 200;
};

/// Largest E_N reached over the horizon, starting from gaussian_init(nbar, eta)
/// without dissipation.
inline double max_log_negativity(double omega0, double nbar, double eta, double coupling, double horizon_periods = 10.0,
                                 double dt_omega = 0.05) {
  const double period = 2.0 * kPi / omega0;
  const long steps = static_cast<long>(std::ceil(horizon_periods * period * omega0 / dt_omega));
  const double dt = horizon_periods * period / static_cast<double>(steps);
  const GaussianPropagator prop(omega0, coupling, 0.0, 0.0, dt);
  GaussianTwoMode s = gaussian_init(nbar, eta);
  double best = log_negativity_gaussian(s);
  for (long i = 0; i < steps; ++i) {
    prop.step(s);
    best = std::max(best, log_negativity_gaussian(s));
  }
  return best;
}

struct ThresholdResult {
  double g_star;
  int iterations;
};

/// Smallest coupling whose maximum E_N over the horizon exceeds the
/// detection level, by log-space bisection inside [g_lo, g_hi].
inline ThresholdResult oscillator_threshold_scan(double omega0, double nbar, double eta, double g_lo, double g_hi,
                                                 const ThresholdScanOptions& opt = {}) {
  if (!(g_lo > 0.0) || !(g_hi > g_lo)) throw DomainError("oscillator_threshold_scan: need 0 < g_lo < g_hi");
  auto entangles = [&](double g) {
    return max_log_negativity(omega0, nbar, eta, g, opt.horizon_periods, opt.dt_omega) > opt.detection;
  };
  if (entangles(g_lo))
    throw NumericalError("oscillator_threshold_scan: lower coupling " + std::to_string(g_lo) +
                         " already entangles; bracket does not contain the threshold");
  if (!entangles(g_hi))
    throw NumericalError("oscillator_threshold_scan: upper coupling " + std::to_string(g_hi) +
                         " does not entangle; bracket does not contain the threshold");
  double lo = g_lo;
  double hi = g_hi;
  int it = 0;
  while (hi / lo - 1.0 > opt.relative_tolerance && it < opt.max_iterations) {
    const double mid = std::sqrt(lo * hi);
    (entangles(mid) ? hi : lo) = mid;
    ++it;
  }
  return {hi, it};
}

}  // namespace gravent
