#ifndef LSGST_SUPEROP_HPP
#define LSGST_SUPEROP_HPP

#include <vector>

#include "lsgst/common.hpp"
#include "lsgst/linalg.hpp"

namespace lsgst {

// Channels act on column-major vectorized density matrices ("natural"
// representation). Composition is plain matrix multiplication, with the
// later channel on the left.
struct SuperOp {
  Mat m;

  SuperOp() = default;
  explicit SuperOp(Mat mat) : m(std::move(mat)) {
    if (m.rows() != m.cols()) throw dimension_error("SuperOp: matrix must be square");
  }

  Eigen::Index dim2() const { return m.rows(); }  // dim^2
  Eigen::Index dim() const {
    auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(m.rows()))));
    if (d * d != m.rows()) throw dimension_error("SuperOp: size is not a perfect square");
    return d;
  }

  static SuperOp identity(Eigen::Index dim) {
    return SuperOp(Mat::Identity(dim * dim, dim * dim));
  }

  SuperOp then(const SuperOp& later) const { return SuperOp(later.m * m); }

  Mat apply(const Mat& rho) const {
    if (dim() != rho.rows() || rho.rows() != rho.cols())
      throw dimension_error("SuperOp::apply: dimension mismatch");
    return unvec(m * vec(rho));
  }
};

inline SuperOp operator*(const SuperOp& a, const SuperOp& b) { return SuperOp(a.m * b.m); }

// K(E_U) = conj(U) (x) U, from vec(ABC) = (C^T (x) A) vec(B)
inline SuperOp unitary_superop(const Mat& u, double tol = tol_exact) {
  if (!is_unitary(u, tol)) throw physicality_error("unitary_superop: input is not unitary");
  return SuperOp(kron(u.conjugate(), u));
}

}  // namespace lsgst

#endif
