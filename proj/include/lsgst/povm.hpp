#ifndef LSGST_POVM_HPP
#define LSGST_POVM_HPP

#include <string>
#include <vector>

#include "lsgst/common.hpp"
#include "lsgst/linalg.hpp"
#include "lsgst/superop.hpp"

namespace lsgst {

inline void validate_density_matrix(const Mat& rho, double tol = tol_exact) {
  if (rho.rows() != rho.cols() || (rho.rows() != 2 && rho.rows() != 4))
    throw dimension_error("density matrix must be 2x2 or 4x4");
  if (!is_hermitian(rho, tol)) throw physicality_error("density matrix not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
    throw physicality_error("density matrix trace != 1");
  if (min_eigenvalue((rho + rho.adjoint()) / 2.0) < -tol_psd)
    throw physicality_error("density matrix has a negative eigenvalue");
}

struct Povm {
  std::vector<Mat> effects;
  std::vector<std::string> labels;

  Eigen::Index dim() const { return effects.empty() ? 0 : effects.front().rows(); }

  void validate(double tol = tol_exact) const {
    if (effects.empty() || effects.size() != labels.size())
      throw dimension_error("Povm: effects/labels mismatch");
    Mat acc = Mat::Zero(dim(), dim());
    for (const Mat& e : effects) {
      if (!is_hermitian(e, tol)) throw physicality_error("Povm: effect not Hermitian");
      if (min_eigenvalue((e + e.adjoint()) / 2.0) < -tol_psd)
        throw physicality_error("Povm: effect not PSD");
      acc += e;
    }
    acc -= Mat::Identity(dim(), dim());
    if (acc.cwiseAbs().maxCoeff() > tol)
      throw physicality_error("Povm: effects do not sum to identity");
  }
};

// p_mu = tr(M_mu rho); entries below -1e-10 are a model physicality error,
// small negatives are clamped only at this sampling boundary.
inline RVec probabilities(const Povm& m, const Mat& rho) {
  if (m.dim() != rho.rows()) throw dimension_error("probabilities: dimension mismatch");
  RVec p(static_cast<Eigen::Index>(m.effects.size()));
  for (std::size_t k = 0; k < m.effects.size(); ++k) {
    cplx val = (m.effects[k] * rho).trace();
    if (val.real() < -tol_psd)
      throw physicality_error("probabilities: negative outcome probability");
    p(static_cast<Eigen::Index>(k)) = std::max(0.0, val.real());
  }
  const double total = p.sum();
  if (std::abs(total - 1.0) > 1e-10)
    throw physicality_error("probabilities: distribution does not sum to 1");
  return p;
}

}  // namespace lsgst

#endif
