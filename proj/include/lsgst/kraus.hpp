#ifndef LSGST_KRAUS_HPP
#define LSGST_KRAUS_HPP

#include <vector>

#include "lsgst/common.hpp"
#include "lsgst/linalg.hpp"
#include "lsgst/superop.hpp"

namespace lsgst {

struct KrausSet {
  std::vector<Mat> ops;

  Eigen::Index dim() const { return ops.empty() ? 0 : ops.front().rows(); }

  // sum_n K_n^dag K_n - 1, max abs entry
  double completeness_defect() const {
    if (ops.empty()) throw dimension_error("KrausSet: empty");
    Mat acc = Mat::Zero(dim(), dim());
    for (const Mat& k : ops) acc += k.adjoint() * k;
    acc -= Mat::Identity(dim(), dim());
    return acc.cwiseAbs().maxCoeff();
  }

  bool is_complete(double tol = tol_exact) const { return completeness_defect() <= tol; }
};

inline SuperOp kraus_to_superop(const KrausSet& ks, double completeness_tol = 1e-9) {
  if (ks.completeness_defect() > completeness_tol)
    throw physicality_error("kraus_to_superop: Kraus set is not complete");
  const auto d = ks.dim();
  Mat s = Mat::Zero(d * d, d * d);
  for (const Mat& k : ks.ops) s += kron(k.conjugate(), k);
  return SuperOp(std::move(s));
}

}  // namespace lsgst

#endif
