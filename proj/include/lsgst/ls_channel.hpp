#ifndef LSGST_LS_CHANNEL_HPP
#define LSGST_LS_CHANNEL_HPP

#include <array>
#include <cmath>

#include "lsgst/amplification.hpp"
#include "lsgst/common.hpp"
#include "lsgst/kraus.hpp"
#include "lsgst/pauli.hpp"
#include "lsgst/spectra.hpp"
#include "lsgst/superop.hpp"

namespace lsgst {

// Parameters of one noisy LS gate. The composed channel is diagonal in the
// natural representation, so everything here is bookkeeping of 16 phases and
// decay factors.
struct LsParams {
  double gamma_d = 0.0;         // collective dephasing parameter
  double gamma_th = 0.0;        // thermal parameter of the breathing mode
  double theta_ls = pi / 4.0;   // entangling angle
  double omega0_t = 0.0;        // accumulated local phase omega_0 * t_g
  double x = 0.0;               // breathing phase advance omega_{z,2} * t_g
  double zeta_prefactor = 0.0;  // (|Omega_L| eta_2 / delta_2)^2, fixed by the drive

  bool is_cp() const { return gamma_d >= 0.0 && gamma_th >= 0.0; }
};

struct SequenceParams {
  LsParams base;
  int p = 1;

  void validate() const {
    if (p < 1) throw config_error("SequenceParams: p must be >= 1");
  }
};

enum class SequenceMode { context_dependent, context_independent };

namespace detail {

// (-1)^bit of qubit q in the two-qubit index s (qubit 0 is the left factor)
inline int zsign(int s, int q) { return ((s >> (1 - q)) & 1) ? -1 : 1; }

}  // namespace detail

// Diagonal of the composed dephasing channel, Eqs. of the anticorrelated
// (thermal) and correlated (magnetic) patterns multiplied entrywise. Entry
// order is column-major: index = gamma*4 + sigma.
inline Eigen::Matrix<double, 16, 1> noise_diagonal(double gamma_d, double gamma_th) {
  Eigen::Matrix<double, 16, 1> diag;
  for (int g = 0; g < 4; ++g)
    for (int s = 0; s < 4; ++s) {
      const double d1 = detail::zsign(s, 0) - detail::zsign(g, 0);
      const double d2 = detail::zsign(s, 1) - detail::zsign(g, 1);
      const double w_anti = 0.25 * (d1 - d2) * (d1 - d2);
      const double w_corr = 0.25 * (d1 + d2) * (d1 + d2);
      diag(g * 4 + s) = std::exp(-gamma_th * w_anti - gamma_d * w_corr);
    }
  return diag;
}

inline SuperOp noise_superop(double gamma_d, double gamma_th) {
  return SuperOp(Mat(noise_diagonal(gamma_d, gamma_th).cast<cplx>().asDiagonal()));
}

// Kraus decomposition of the noise channel. Reproducing the superoperator
// diagonals requires chi = exp(-2 Gamma); with chi = exp(-Gamma) the two
// representations differ by a factor 2 in every exponent.
inline KrausSet ls_kraus_set(double gamma_d, double gamma_th) {
  if (gamma_d < 0.0 || gamma_th < 0.0)
    throw physicality_error("ls_kraus_set: negative parameter violates CP");
  const double chi_d = std::exp(-2.0 * gamma_d);
  const double chi_th = std::exp(-2.0 * gamma_th);
  const Mat one = Mat::Identity(4, 4);
  const Mat z1 = kron(pauli_z(), pauli_i());
  const Mat z2 = kron(pauli_i(), pauli_z());
  const Mat zz = kron(pauli_z(), pauli_z());

  KrausSet ks;
  ks.ops.push_back(0.5 * (std::sqrt(chi_d) + std::sqrt(chi_th)) * one +
                   0.5 * (std::sqrt(chi_d) - std::sqrt(chi_th)) * zz);
  ks.ops.push_back(0.5 * std::sqrt(chi_th * (1.0 - chi_th)) * (z1 - z2));
  ks.ops.push_back(0.5 * std::sqrt(chi_d * (1.0 - chi_d)) * (z1 + z2));
  ks.ops.push_back(0.25 * (1.0 - chi_th) * (one + z1) * (one - z2));
  ks.ops.push_back(0.25 * (1.0 - chi_th) * (one - z1) * (one + z2));
  ks.ops.push_back(0.25 * (1.0 - chi_d) * (one + z1) * (one + z2));
  ks.ops.push_back(0.25 * (1.0 - chi_d) * (one - z1) * (one - z2));
  return ks;
}

// diagonal of exp(-i lambda/2 (Z1+Z2)) exp(-i theta Z1 Z2)
inline Eigen::Matrix<cplx, 4, 1> ls_unitary_diagonal(double theta_zz, double local_phase) {
  Eigen::Matrix<cplx, 4, 1> u;
  for (int s = 0; s < 4; ++s) {
    const double zsum = detail::zsign(s, 0) + detail::zsign(s, 1);
    const double zprod = detail::zsign(s, 0) * detail::zsign(s, 1);
    u(s) = std::exp(-ii * (0.5 * local_phase * zsum + theta_zz * zprod));
  }
  return u;
}

inline Eigen::Matrix<cplx, 16, 1> ls_channel_diagonal(double gamma_d, double gamma_th,
                                                      double theta_zz, double local_phase) {
  const auto noise = noise_diagonal(gamma_d, gamma_th);
  const auto u = ls_unitary_diagonal(theta_zz, local_phase);
  Eigen::Matrix<cplx, 16, 1> diag;
  for (int g = 0; g < 4; ++g)
    for (int s = 0; s < 4; ++s)
      diag(g * 4 + s) = noise(g * 4 + s) * std::conj(u(g)) * u(s);
  return diag;
}

inline Eigen::Matrix<cplx, 16, 1> ls_gate_diagonal(const LsParams& lp) {
  return ls_channel_diagonal(lp.gamma_d, lp.gamma_th, lp.theta_ls, lp.omega0_t);
}

inline SuperOp diagonal_superop(const Eigen::Matrix<cplx, 16, 1>& d) {
  return SuperOp(Mat(d.asDiagonal()));
}

// single noisy LS gate: noise channel composed after the ideal unitary
inline SuperOp ls_gate_superop(const LsParams& lp) {
  return diagonal_superop(ls_gate_diagonal(lp));
}

inline Eigen::Matrix<cplx, 16, 1> sequence_diagonal(const SequenceParams& sp,
                                                    SequenceMode mode) {
  sp.validate();
  const LsParams& b = sp.base;
  const double p = sp.p;
  if (mode == SequenceMode::context_independent)
    return ls_channel_diagonal(p * b.gamma_d, p * b.gamma_th, p * b.theta_ls, p * b.omega0_t);
  const double gamma_th_p = b.gamma_th * amplification_factor(sp.p, b.x);
  const double zeta = zeta_phase(sp.p, b.x, b.zeta_prefactor);
  return ls_channel_diagonal(p * b.gamma_d, gamma_th_p, p * b.theta_ls + 0.5 * zeta,
                             p * b.omega0_t);
}

// channel of p consecutive LS gates
inline SuperOp sequence_superop(const SequenceParams& sp, SequenceMode mode) {
  return diagonal_superop(sequence_diagonal(sp, mode));
}

// r-th intermediate map of the context-dependent sequence. Its thermal
// parameter Gamma_th (A(r)-A(r-1)) can be negative: non-CP intermediates are
// legal values here, CP-ness is a predicate and not an invariant.
inline SuperOp intermediate_superop(int r, const LsParams& b) {
  if (r < 1) throw config_error("intermediate_superop: r must be >= 1");
  const double a_r = amplification_factor(r, b.x);
  const double a_rm1 = amplification_factor(r - 1, b.x);
  const double zeta_step =
      zeta_phase(r, b.x, b.zeta_prefactor) - zeta_phase(r - 1, b.x, b.zeta_prefactor);
  return diagonal_superop(ls_channel_diagonal(b.gamma_d, b.gamma_th * (a_r - a_rm1),
                                              b.theta_ls + 0.5 * zeta_step, b.omega0_t));
}

// phase-space trajectory of one driven mode, phi_{j,m}(t); the convention
// Delta k . r_j^0 = phi_L = 0 is adopted globally
inline cplx displacement_amplitude(int ion, const ModeSpec& mode, const LaserDrive& drive,
                                   double t) {
  if (mode.delta == 0.0) throw config_error("displacement_amplitude: resonant mode");
  const double f = force_amplitude(ion, mode, drive);
  return f / mode.delta * (1.0 - std::exp(ii * (mode.delta * t)));
}

}  // namespace lsgst

#endif
