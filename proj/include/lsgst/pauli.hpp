#ifndef LSGST_PAULI_HPP
#define LSGST_PAULI_HPP

#include <vector>

#include "lsgst/common.hpp"
#include "lsgst/linalg.hpp"
#include "lsgst/superop.hpp"

namespace lsgst {

inline const Mat& pauli_i() {
  static const Mat m = Mat::Identity(2, 2);
  return m;
}
inline const Mat& pauli_x() {
  static const Mat m = (Mat(2, 2) << 0, 1, 1, 0).finished();
  return m;
}
inline const Mat& pauli_y() {
  static const Mat m = (Mat(2, 2) << 0, -ii, ii, 0).finished();
  return m;
}
inline const Mat& pauli_z() {
  static const Mat m = (Mat(2, 2) << 1, 0, 0, -1).finished();
  return m;
}

// Pauli strings in {I,X,Y,Z}^n, lexicographic, qubit 0 as the left factor.
inline std::vector<Mat> pauli_basis(int nqubits) {
  const Mat single[4] = {pauli_i(), pauli_x(), pauli_y(), pauli_z()};
  std::vector<Mat> basis{Mat::Identity(1, 1)};
  for (int q = 0; q < nqubits; ++q) {
    std::vector<Mat> next;
    next.reserve(basis.size() * 4);
    for (const Mat& b : basis)
      for (const Mat& s : single) next.push_back(kron(b, s));
    basis = std::move(next);
  }
  return basis;
}

inline int nqubits_of_dim(Eigen::Index d) {
  if (d == 2) return 1;
  if (d == 4) return 2;
  throw dimension_error("expected dimension 2 or 4");
}

// PTM_{ij} = tr(P_i E(P_j)) / d; a similarity transform by the normalized
// Pauli-string basis, so the round trip is exact.
inline Mat superop_to_ptm(const SuperOp& s) {
  const auto d = s.dim();
  const auto basis = pauli_basis(nqubits_of_dim(d));
  const auto n = static_cast<Eigen::Index>(basis.size());
  Mat ptm(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Vec col = s.m * vec(basis[j]);
    for (Eigen::Index i = 0; i < n; ++i)
      ptm(i, j) = vec(basis[i]).dot(col) / double(d);  // dot conjugates the lhs
  }
  return ptm;
}

inline SuperOp ptm_to_superop(const Mat& ptm) {
  const auto n = ptm.rows();
  Eigen::Index d = (n == 4) ? 2 : (n == 16) ? 4 : 0;
  if (d == 0 || ptm.cols() != n) throw dimension_error("ptm_to_superop: expected 4x4 or 16x16");
  const auto basis = pauli_basis(nqubits_of_dim(d));
  Mat b(d * d, n);
  for (Eigen::Index i = 0; i < n; ++i) b.col(i) = vec(basis[i]) / std::sqrt(double(d));
  return SuperOp(b * ptm * b.adjoint());
}

// trace preservation <=> first PTM row is (1,0,...,0)
inline bool is_trace_preserving(const SuperOp& s, double tol = tol_exact) {
  Mat ptm = superop_to_ptm(s);
  if (std::abs(ptm(0, 0) - 1.0) > tol) return false;
  for (Eigen::Index j = 1; j < ptm.cols(); ++j)
    if (std::abs(ptm(0, j)) > tol) return false;
  return true;
}

}  // namespace lsgst

#endif
