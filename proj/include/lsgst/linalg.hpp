#ifndef LSGST_LINALG_HPP
#define LSGST_LINALG_HPP

#include <cmath>

#include "lsgst/common.hpp"

namespace lsgst {

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Mat dagger(const Mat& m) { return m.adjoint(); }

inline bool is_hermitian(const Mat& m, double tol = tol_exact) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_unitary(const Mat& u, double tol = tol_exact) {
  Mat g = u.adjoint() * u;
  g -= Mat::Identity(u.rows(), u.cols());
  return g.cwiseAbs().maxCoeff() <= tol;
}

// smallest eigenvalue of a Hermitian matrix
inline double min_eigenvalue(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

inline bool is_psd(const Mat& m, double tol = tol_psd) {
  if (!is_hermitian(m, 1e-9)) return false;
  return min_eigenvalue((m + m.adjoint()) / 2.0) >= -tol;
}

// column-major stacking, the convention used throughout
inline Vec vec(const Mat& rho) {
  Vec v(rho.size());
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < rho.cols(); ++c)
    for (Eigen::Index r = 0; r < rho.rows(); ++r) v(k++) = rho(r, c);
  return v;
}

inline Mat unvec(const Vec& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(v.size()))));
  if (d * d != v.size()) throw dimension_error("unvec: length is not a perfect square");
  Mat rho(d, d);
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r) rho(r, c) = v(k++);
  return rho;
}

}  // namespace lsgst

#endif
