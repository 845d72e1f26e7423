#ifndef LSGST_SINGLE_QUBIT_HPP
#define LSGST_SINGLE_QUBIT_HPP

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "lsgst/common.hpp"
#include "lsgst/pauli.hpp"
#include "lsgst/superop.hpp"

namespace lsgst {

struct SingleQubitGateSpec {
  double theta;  // rotation angle
  double phi;    // axis angle in the XY plane
  int qubit;     // 0 or 1
};

// G(theta, phi) = exp(-i theta/2 (cos phi X - sin phi Y))
inline Mat ideal_single_qubit(const SingleQubitGateSpec& g) {
  const Mat axis = std::cos(g.phi) * pauli_x() - std::sin(g.phi) * pauli_y();
  return std::cos(0.5 * g.theta) * Mat::Identity(2, 2) - ii * std::sin(0.5 * g.theta) * axis;
}

struct SingleQubitNoise {
  double gamma1 = 0.0;  // dephasing rate along the rotation axis
  double delta1 = 0.0;  // residual detuning phase (Z rotation)
  double dgamma = 0.0;  // dephasing rate about Z
  double gamma2 = 0.0;  // second-order terms, kept at 0 by default
  double delta2 = 0.0;
};

// dephasing about a Hermitian unitary axis operator: transverse Bloch
// components shrink by exp(-gamma)
inline SuperOp dephasing_about(const Mat& axis_op, double gamma) {
  const double chi = std::exp(-gamma);
  Mat s = 0.5 * (1.0 + chi) * Mat::Identity(4, 4) +
          0.5 * (1.0 - chi) * kron(axis_op.conjugate(), axis_op);
  return SuperOp(std::move(s));
}

// Noisy gate on its own qubit (4x4 superoperator): the ideal rotation,
// then rotation-axis dephasing Gamma_1, then the residual Z rotation
// Delta_1, then Z-axis dephasing DGamma. The two dephasings act about
// different axes so that all three rates stay independently identifiable.
inline SuperOp noisy_single_qubit_local(const SingleQubitGateSpec& g,
                                        const SingleQubitNoise& n) {
  const Mat u = ideal_single_qubit(g);
  const Mat axis = std::cos(g.phi) * pauli_x() - std::sin(g.phi) * pauli_y();
  SuperOp s = unitary_superop(u, 1e-9);
  s = s.then(dephasing_about(axis, n.gamma1));
  if (n.delta1 != 0.0) {
    Mat rz = (Mat(2, 2) << std::exp(-ii * (0.5 * n.delta1)), 0, 0,
              std::exp(ii * (0.5 * n.delta1)))
                 .finished();
    s = s.then(unitary_superop(rz, 1e-9));
  }
  if (n.dgamma != 0.0) s = s.then(dephasing_about(pauli_z(), n.dgamma));
  return s;
}

// lift a one-qubit superoperator to the two-qubit register (identity on the
// other qubit); qubit 0 is the left tensor factor
inline SuperOp embed_on_qubit(const SuperOp& s4, int qubit) {
  if (s4.dim2() != 4) throw dimension_error("embed_on_qubit: expected a 4x4 superoperator");
  Mat out = Mat::Zero(16, 16);
  const Mat id4 = Mat::Identity(4, 4);
  const Mat& ka = (qubit == 0) ? s4.m : id4;
  const Mat& kb = (qubit == 0) ? id4 : s4.m;
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int ap = 0; ap < 2; ++ap)
        for (int cp = 0; cp < 2; ++cp)
          for (int b = 0; b < 2; ++b)
            for (int d = 0; d < 2; ++d)
              for (int bp = 0; bp < 2; ++bp)
                for (int dp = 0; dp < 2; ++dp) {
                  const cplx v = ka(c * 2 + a, cp * 2 + ap) * kb(d * 2 + b, dp * 2 + bp);
                  if (v != 0.0)
                    out((2 * c + d) * 4 + (2 * a + b), (2 * cp + dp) * 4 + (2 * ap + bp)) += v;
                }
  return SuperOp(std::move(out));
}

inline SuperOp noisy_single_qubit(const SingleQubitGateSpec& g, const SingleQubitNoise& n) {
  return embed_on_qubit(noisy_single_qubit_local(g, n), g.qubit);
}

// the informationally-complete single-qubit gate alphabet
inline const std::array<std::pair<const char*, std::pair<double, double>>, 5>&
single_qubit_alphabet() {
  static const std::array<std::pair<const char*, std::pair<double, double>>, 5> alpha = {{
      {"XPI", {pi, 0.0}},
      {"XP2", {0.5 * pi, 0.0}},
      {"XM2", {0.5 * pi, pi}},
      {"YP2", {0.5 * pi, 1.5 * pi}},
      {"YM2", {0.5 * pi, 0.5 * pi}},
  }};
  return alpha;
}

}  // namespace lsgst

#endif
