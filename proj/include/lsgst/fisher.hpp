#ifndef LSGST_FISHER_HPP
#define LSGST_FISHER_HPP

#include <functional>
#include <string>
#include <vector>

#include "lsgst/design.hpp"
#include "lsgst/gate_set.hpp"
#include "lsgst/probability.hpp"
#include "lsgst/theta.hpp"

namespace lsgst {

struct FisherOptions {
  double grad_step = 1e-6;
  double hess_step = 1e-4;
  bool with_hessian_term = true;   // keep the sum_mu H_mu term of the formula
  double prob_floor = 1e-12;       // outcomes below this are dropped from 1/p terms
  std::vector<int> mask;           // parameter indices to include; empty = all
};

struct FisherMatrix {
  RMat m;
  std::vector<std::string> circuits;  // provenance

  void check_symmetric(double tol = 1e-10) const {
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol)
      throw solver_error("FisherMatrix: not symmetric");
  }
};

namespace detail {

inline std::vector<int> effective_mask(const FisherOptions& opt, int dim) {
  if (!opt.mask.empty()) return opt.mask;
  std::vector<int> all(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) all[static_cast<std::size_t>(i)] = i;
  return all;
}

// probabilities of one circuit as a function of theta
inline RVec probs_at(const Circuit& c, const ThetaVector& theta, const ModelContext& ctx,
                     SequenceMode mode) {
  return circuit_probabilities(c, build_gateset(theta, ctx), mode, false);
}

}  // namespace detail

// per-outcome gradients by central differences
inline std::vector<RVec> probability_gradients(const Circuit& c, const ThetaVector& theta,
                                               const ModelContext& ctx, SequenceMode mode,
                                               const FisherOptions& opt = {}) {
  const auto mask = detail::effective_mask(opt, theta.size());
  std::vector<RVec> grads(4, RVec::Zero(static_cast<Eigen::Index>(mask.size())));
  for (std::size_t k = 0; k < mask.size(); ++k) {
    ThetaVector tp = theta, tm = theta;
    tp[mask[k]] += opt.grad_step;
    tm[mask[k]] -= opt.grad_step;
    const RVec pp = detail::probs_at(c, tp, ctx, mode);
    const RVec pm = detail::probs_at(c, tm, ctx, mode);
    for (int mu = 0; mu < 4; ++mu)
      grads[static_cast<std::size_t>(mu)](static_cast<Eigen::Index>(k)) =
          (pp(mu) - pm(mu)) / (2.0 * opt.grad_step);
  }
  return grads;
}

// per-outcome Hessians by central second differences
inline std::vector<RMat> probability_hessians(const Circuit& c, const ThetaVector& theta,
                                              const ModelContext& ctx, SequenceMode mode,
                                              const FisherOptions& opt = {}) {
  const auto mask = detail::effective_mask(opt, theta.size());
  const auto np = static_cast<Eigen::Index>(mask.size());
  const double h = opt.hess_step;
  std::vector<RMat> hess(4, RMat::Zero(np, np));
  const RVec p0 = detail::probs_at(c, theta, ctx, mode);
  for (Eigen::Index i = 0; i < np; ++i) {
    ThetaVector tp = theta, tm = theta;
    tp[mask[static_cast<std::size_t>(i)]] += h;
    tm[mask[static_cast<std::size_t>(i)]] -= h;
    const RVec pp = detail::probs_at(c, tp, ctx, mode);
    const RVec pm = detail::probs_at(c, tm, ctx, mode);
    for (int mu = 0; mu < 4; ++mu)
      hess[static_cast<std::size_t>(mu)](i, i) = (pp(mu) - 2.0 * p0(mu) + pm(mu)) / (h * h);
    for (Eigen::Index jj = i + 1; jj < np; ++jj) {
      ThetaVector tpp = theta, tpm = theta, tmp = theta, tmm = theta;
      const int pi = mask[static_cast<std::size_t>(i)];
      const int pj = mask[static_cast<std::size_t>(jj)];
      tpp[pi] += h;
      tpp[pj] += h;
      tpm[pi] += h;
      tpm[pj] -= h;
      tmp[pi] -= h;
      tmp[pj] += h;
      tmm[pi] -= h;
      tmm[pj] -= h;
      const RVec a = detail::probs_at(c, tpp, ctx, mode);
      const RVec b = detail::probs_at(c, tpm, ctx, mode);
      const RVec cc = detail::probs_at(c, tmp, ctx, mode);
      const RVec dd = detail::probs_at(c, tmm, ctx, mode);
      for (int mu = 0; mu < 4; ++mu) {
        const double v = (a(mu) - b(mu) - cc(mu) + dd(mu)) / (4.0 * h * h);
        hess[static_cast<std::size_t>(mu)](i, jj) = v;
        hess[static_cast<std::size_t>(mu)](jj, i) = v;
      }
    }
  }
  return hess;
}

// I_c = N sum_mu [ (1/p_mu) grad p_mu grad p_mu^T - H_mu ]
inline FisherMatrix fisher_per_circuit(const Circuit& c, const ThetaVector& theta,
                                       const ModelContext& ctx, SequenceMode mode,
                                       double n_samples, const FisherOptions& opt = {}) {
  const auto mask = detail::effective_mask(opt, theta.size());
  const auto np = static_cast<Eigen::Index>(mask.size());
  const RVec p = detail::probs_at(c, theta, ctx, mode);
  const auto grads = probability_gradients(c, theta, ctx, mode, opt);

  FisherMatrix f;
  f.m = RMat::Zero(np, np);
  f.circuits.push_back(serialize_circuit(c));
  for (int mu = 0; mu < 4; ++mu) {
    if (p(mu) < opt.prob_floor) continue;  // dropped from the gradient term
    const RVec& g = grads[static_cast<std::size_t>(mu)];
    f.m += (g * g.transpose()) / p(mu);
  }
  if (opt.with_hessian_term) {
    const auto hess = probability_hessians(c, theta, ctx, mode, opt);
    for (int mu = 0; mu < 4; ++mu) f.m -= hess[static_cast<std::size_t>(mu)];
  }
  f.m *= n_samples;
  f.m = ((f.m + f.m.transpose()) / 2.0).eval();
  return f;
}

// additivity over circuits
inline FisherMatrix fisher_design(const Design& design, const ThetaVector& theta,
                                  const ModelContext& ctx, SequenceMode mode,
                                  const FisherOptions& opt = {}) {
  FisherMatrix total;
  const auto mask = detail::effective_mask(opt, theta.size());
  total.m = RMat::Zero(static_cast<Eigen::Index>(mask.size()),
                       static_cast<Eigen::Index>(mask.size()));
  for (const Circuit& c : design.circuits) {
    FisherMatrix fc =
        fisher_per_circuit(c, theta, ctx, mode, double(design.n_samples), opt);
    total.m += fc.m;
    total.circuits.push_back(fc.circuits.front());
  }
  return total;
}

struct CrbBounds {
  RVec sqrt_eigenvalues;            // sqrt of eigenvalues of F^-1, ascending F order
  RMat directions;                  // eigenvectors paired to the bounds
  RVec per_parameter;               // sqrt of diag(F^-1)
  bool rank_deficient = false;
  std::vector<int> null_directions; // indices of (near-)null eigenvectors
};

// CRB-derived error bounds from the spectrum and diagonal of F^-1
inline CrbBounds crb_bounds(const FisherMatrix& f, double rank_tol = 1e-9) {
  Eigen::SelfAdjointEigenSolver<RMat> es(f.m);
  const RVec ev = es.eigenvalues();
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);

  CrbBounds out;
  out.directions = es.eigenvectors();
  out.sqrt_eigenvalues = RVec(ev.size());
  RMat pinv = RMat::Zero(ev.size(), ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) > rank_tol * scale) {
      out.sqrt_eigenvalues(k) = 1.0 / std::sqrt(ev(k));
      pinv += (1.0 / ev(k)) * es.eigenvectors().col(k) * es.eigenvectors().col(k).transpose();
    } else {
      out.sqrt_eigenvalues(k) = std::numeric_limits<double>::infinity();
      out.rank_deficient = true;
      out.null_directions.push_back(static_cast<int>(k));
    }
  }
  out.per_parameter = pinv.diagonal().cwiseSqrt();
  return out;
}

// Design validation: the Fisher information at the working point must have
// full rank over the enabled parameters, otherwise some directions are
// unidentifiable and the estimator cannot converge on them.
inline void validate_design(const Design& design, const ThetaVector& theta,
                            const ModelContext& ctx, SequenceMode mode,
                            double rank_tol = 1e-9) {
  FisherOptions opt;
  opt.with_hessian_term = false;  // the Hessian term cancels over outcomes
  FisherMatrix f = fisher_design(design, theta, ctx, mode, opt);
  CrbBounds b = crb_bounds(f, rank_tol);
  if (!b.rank_deficient) return;
  std::string msg = "design is rank deficient; unidentifiable directions (leading components):";
  const auto names = theta.layout.names();
  for (int k : b.null_directions) {
    Eigen::Index imax;
    b.directions.col(k).cwiseAbs().maxCoeff(&imax);
    msg += " " + names[static_cast<std::size_t>(imax)];
  }
  throw design_error(msg);
}

}  // namespace lsgst

#endif
