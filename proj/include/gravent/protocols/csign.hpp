#pragma once

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "gravent/constants.hpp"
#include "gravent/errors.hpp"
#include "gravent/rates.hpp"

namespace gravent {

// Two masses, each in a two-branch superposition |L> + |R>. Basis ordering
// is {LL, LR, RL, RR} with particle 1 first.

struct CsignPhases {
  double phi0;   // branches at separation d
  double phi1;   // branches at separation sqrt(d^2 + dx^2)
  double delta;  // |phi1 - phi0|
};

inline CsignPhases csign_phases(double m, double d, double delta_x, double t, const PhysicalConstants& pc = kCodata) {
  if (!(d > 0.0)) throw DomainError("csign_phases: distance must be > 0");
  if (!(t >= 0.0)) throw DomainError("csign_phases: time must be >= 0");
  const double r1 = std::hypot(d, delta_x);
  const double phi0 = m * newtonian_potential(m, d, pc) * t / pc.hbar;
  const double phi1 = m * newtonian_potential(m, r1, pc) * t / pc.hbar;
  return {phi0, phi1, std::abs(phi1 - phi0)};
}

/// |1 + cos(2 dphi)|: overlap of the conditional states of particle 2;
/// 2 for separable branches, 0 for orthogonal ones.
inline double branch_overlap(double delta_phi) { return std::abs(1.0 + std::cos(2.0 * delta_phi)); }

struct BranchState {
  Eigen::Matrix4cd rho;
  double t = 0.0;

  /// Throws StateError unless rho is a unit-trace Hermitian PSD matrix.
  void check() const {
    const auto tr = rho.trace();
    if (std::abs(tr.real() - 1.0) > 1e-10 || std::abs(tr.imag()) > 1e-10)
      throw StateError("BranchState: trace differs from 1");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw StateError("BranchState: rho is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) throw StateError("BranchState: rho is not positive semidefinite");
  }
};

/// Transpose on particle 2: |a b><c d| -> |a d><c b|.
inline Eigen::Matrix4cd partial_transpose_second(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix4cd out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) out(2 * a + d, 2 * c + b) = rho(2 * a + b, 2 * c + d);
  return out;
}

/// Sum of |negative eigenvalues| of the partial transpose.
inline double negativity_two_qubit(const Eigen::Matrix4cd& rho) {
  BranchState{rho, 0.0}.check();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(partial_transpose_second(rho), Eigen::EigenvaluesOnly);
  double n = 0.0;
  for (int i = 0; i < 4; ++i)
    if (es.eigenvalues()(i) < 0.0) n -= es.eigenvalues()(i);
  return n;
}

inline double log_negativity_two_qubit(const Eigen::Matrix4cd& rho) {
  return std::log2(1.0 + 2.0 * negativity_two_qubit(rho));
}

/// Closed-form state at time t: equal-weight branches with conditional
/// phases, and each particle's L/R coherence damped by exp(-gamma_dec t)
/// independently.
inline BranchState csign_evolve(double m, double d, double delta_x, double gamma_dec, double t,
                                const PhysicalConstants& pc = kCodata) {
  if (!(gamma_dec >= 0.0)) throw DomainError("csign_evolve: decoherence rate must be >= 0");
  const CsignPhases ph = csign_phases(m, d, delta_x, t, pc);
  // Common phase phi0 dropped; anti-aligned branches carry the difference.
  const std::array<double, 4> phase{0.0, ph.delta, ph.delta, 0.0};
  const double damp = std::exp(-gamma_dec * t);

  BranchState s;
  s.t = t;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int flips = ((i >> 1) != (j >> 1)) + ((i & 1) != (j & 1));
      const double weight = 0.25 * (flips == 0 ? 1.0 : flips == 1 ? damp : damp * damp);
      s.rho(i, j) = weight * std::polar(1.0, phase[i] - phase[j]);
    }
  }
  return s;
}

}  // namespace gravent
