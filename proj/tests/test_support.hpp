#ifndef LSGST_TEST_SUPPORT_HPP
#define LSGST_TEST_SUPPORT_HPP

#include <random>

#include "lsgst/kraus.hpp"
#include "lsgst/linalg.hpp"
#include "lsgst/superop.hpp"

namespace lsgst::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0xC0FFEEu);
  return gen;
}

inline Mat random_matrix(Eigen::Index d) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = cplx(n(rng()), n(rng()));
  return m;
}

inline Mat random_hermitian(Eigen::Index d) {
  Mat m = random_matrix(d);
  return (m + m.adjoint()) / 2.0;
}

inline Mat random_density(Eigen::Index d) {
  Mat g = random_matrix(d);
  Mat rho = g * g.adjoint();
  return rho / rho.trace();
}

inline Mat random_unitary(Eigen::Index d) {
  Eigen::HouseholderQR<Mat> qr(random_matrix(d));
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < d; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

// random CPTP map through a Haar-ish isometry with `k` Kraus operators
inline KrausSet random_cptp(Eigen::Index d, int k = 4) {
  Mat block(d * k, d);
  std::normal_distribution<double> n(0.0, 1.0);
  for (Eigen::Index i = 0; i < block.rows(); ++i)
    for (Eigen::Index j = 0; j < block.cols(); ++j) block(i, j) = cplx(n(rng()), n(rng()));
  Eigen::HouseholderQR<Mat> qr(block);
  Mat q = Mat(qr.householderQ()).leftCols(d);
  KrausSet ks;
  for (int a = 0; a < k; ++a) ks.ops.push_back(q.block(a * d, 0, d, d));
  return ks;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return u(rng());
}

}  // namespace lsgst::test

#endif
