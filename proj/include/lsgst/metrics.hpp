#ifndef LSGST_METRICS_HPP
#define LSGST_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lsgst/common.hpp"
#include "lsgst/gate_set.hpp"
#include "lsgst/linalg.hpp"
#include "lsgst/philox.hpp"
#include "lsgst/superop.hpp"

namespace lsgst {

// ---------------------------------------------------------------------------
// Choi matrices and trace norm
// ---------------------------------------------------------------------------

// Choi-Jamiolkowski image with the normalized maximally entangled reference:
// trace 1 for trace-preserving maps. Composite index (a,i) = a*d + i with the
// output factor first.
inline Mat choi_matrix(const SuperOp& s) {
  const Eigen::Index d = s.dim();
  Mat j(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index jj = 0; jj < d; ++jj)
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b)
          j(a * d + i, b * d + jj) = s.m(b * d + a, jj * d + i) / double(d);
  return j;
}

// sum of singular values; for Hermitian input this is the sum of |eigenvalues|
inline double trace_norm(const Mat& m) {
  if (m.rows() != m.cols()) throw dimension_error("trace_norm: matrix must be square");
  if (is_hermitian(m, 1e-11)) {
    Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().sum();
}

namespace detail {

// unnormalized Choi matrix of a channel difference, the SDP data
inline Mat choi_unnormalized(const SuperOp& s) { return double(s.dim()) * choi_matrix(s); }

inline Mat partial_trace_out(const Mat& m, Eigen::Index d) {
  Mat out = Mat::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index jj = 0; jj < d; ++jj) out(i, jj) += m(a * d + i, a * d + jj);
  return out;
}

inline Mat kron_id_left(const Mat& rho, Eigen::Index d) {
  const Eigen::Index n = d * rho.rows();
  Mat out = Mat::Zero(n, n);
  for (Eigen::Index a = 0; a < d; ++a)
    out.block(a * rho.rows(), a * rho.rows(), rho.rows(), rho.rows()) = rho;
  return out;
}

// natural representation of (channel x identity on a d_id-dimensional ancilla)
inline Mat superop_tensor_identity(const SuperOp& s, Eigen::Index d_id) {
  const Eigen::Index d = s.dim();
  const Eigen::Index dd = d * d_id;
  Mat out = Mat::Zero(dd * dd, dd * dd);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index c = 0; c < d; ++c)
      for (Eigen::Index ap = 0; ap < d; ++ap)
        for (Eigen::Index cp = 0; cp < d; ++cp) {
          const cplx v = s.m(c * d + a, cp * d + ap);
          if (v == 0.0) continue;
          for (Eigen::Index i = 0; i < d_id; ++i)
            for (Eigen::Index jj = 0; jj < d_id; ++jj)
              out((c * d_id + jj) * dd + (a * d_id + i),
                  (cp * d_id + jj) * dd + (ap * d_id + i)) = v;
        }
  return out;
}

// real coordinates of Hermitian matrix pairs (Z, rho)
struct HermCoords {
  Eigen::Index n, d;
  int size() const { return static_cast<int>(n * n + d * d); }

  void unpack(const RVec& u, Mat& z, Mat& rho) const {
    z = Mat::Zero(n, n);
    rho = Mat::Zero(d, d);
    int k = 0;
    auto fill = [&](Mat& m, Eigen::Index dim) {
      for (Eigen::Index i = 0; i < dim; ++i) m(i, i) = u(k++);
      for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index jj = i + 1; jj < dim; ++jj) {
          const double a = u(k++), b = u(k++);
          m(i, jj) = cplx(a, b);
          m(jj, i) = cplx(a, -b);
        }
    };
    fill(z, n);
    fill(rho, d);
  }

  // gradient coordinates of a pair of Hermitian matrix gradients
  RVec pack_grad(const Mat& gz, const Mat& grho) const {
    RVec u(size());
    int k = 0;
    auto fill = [&](const Mat& g, Eigen::Index dim) {
      for (Eigen::Index i = 0; i < dim; ++i) u(k++) = g(i, i).real();
      for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index jj = i + 1; jj < dim; ++jj) {
          u(k++) = 2.0 * g(i, jj).real();
          u(k++) = 2.0 * g(i, jj).imag();
        }
    };
    fill(gz, n);
    fill(grho, d);
    return u;
  }

  // basis direction l as a matrix pair
  void basis(int l, Mat& dz, Mat& drho) const {
    RVec e = RVec::Zero(size());
    e(l) = 1.0;
    unpack(e, dz, drho);
  }
};

}  // namespace detail

struct DiamondResult {
  double value = 0.0;      // reported upper bound
  double lower = 0.0;      // primal objective (certified lower bound)
  bool converged = false;  // primal-dual gap below tolerance
  int newton_steps = 0;
};

// Diamond norm of a Hermiticity-preserving map via the semidefinite
// characterization max{ tr(J Z) : -1(x)rho <= Z <= 1(x)rho, tr rho = 1 },
// solved with a dense logdet-barrier path-following method. The reported
// value is the dual upper bound ||Tr_out Y||_inf with Y >= +-J certified by
// eigenvalue checks once the gap falls below `tol`.
inline DiamondResult diamond_norm_hermitian(const Mat& j_choi, double tol = 1e-7) {
  const Eigen::Index n = j_choi.rows();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(n))));
  if (d * d != n || !is_hermitian(j_choi, 1e-9))
    throw dimension_error("diamond_norm_hermitian: need a Hermitian d^2 x d^2 Choi matrix");

  const double jnorm = j_choi.cwiseAbs().maxCoeff();
  DiamondResult res;
  if (jnorm == 0.0) {
    res.converged = true;
    return res;
  }

  detail::HermCoords coords{n, d};
  const int nv = coords.size();

  // strictly feasible start
  Mat z = Mat::Zero(n, n);
  Mat rho = Mat::Identity(d, d) / double(d);

  auto splus = [&](const Mat& zz, const Mat& rr) -> Mat {
    return detail::kron_id_left(rr, d) + zz;
  };
  auto sminus = [&](const Mat& zz, const Mat& rr) -> Mat {
    return detail::kron_id_left(rr, d) - zz;
  };

  auto barrier_value = [&](double t, const Mat& zz, const Mat& rr, bool& ok) {
    Mat sp = splus(zz, rr), sm = sminus(zz, rr);
    Eigen::LLT<Mat> lp((sp + sp.adjoint()) / 2.0), lm((sm + sm.adjoint()) / 2.0);
    if (lp.info() != Eigen::Success || lm.info() != Eigen::Success) {
      ok = false;
      return 0.0;
    }
    ok = true;
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      logdet += std::log(lp.matrixL()(i, i).real()) + std::log(lm.matrixL()(i, i).real());
    return t * (j_choi * zz).trace().real() + 2.0 * logdet;
  };

  // equality-constraint direction: coordinates of d(tr rho)
  RVec cdir = coords.pack_grad(Mat::Zero(n, n), Mat::Identity(d, d));

  // Certified bounds from any interior rho: with H = (1 (x) sqrt(rho)) J
  // (1 (x) sqrt(rho)), the matrix Y = (1 (x) rho^-1/2) |H| (1 (x) rho^-1/2)
  // satisfies Y >= +-J, so ||Tr_out Y||_inf upper-bounds the norm while
  // ||H||_1 lower-bounds it; both become tight as rho approaches the
  // maximizer on the central path.
  auto certify = [&](const Mat& rr, double& lower, double& upper) {
    Eigen::SelfAdjointEigenSolver<Mat> er((rr + rr.adjoint()) / 2.0);
    const double floor_ev = 1e-14;
    Mat sqrt_r = Mat::Zero(d, d), isqrt_r = Mat::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
      const double ev = std::max(er.eigenvalues()(k), floor_ev);
      sqrt_r += std::sqrt(ev) * er.eigenvectors().col(k) * er.eigenvectors().col(k).adjoint();
      isqrt_r +=
          (1.0 / std::sqrt(ev)) * er.eigenvectors().col(k) * er.eigenvectors().col(k).adjoint();
    }
    Mat h = detail::kron_id_left(sqrt_r, d) * j_choi * detail::kron_id_left(sqrt_r, d);
    Eigen::SelfAdjointEigenSolver<Mat> eh((h + h.adjoint()) / 2.0);
    lower = eh.eigenvalues().cwiseAbs().sum();
    Mat habs = Mat::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
      habs += std::abs(eh.eigenvalues()(k)) * eh.eigenvectors().col(k) *
              eh.eigenvectors().col(k).adjoint();
    Mat y = detail::kron_id_left(isqrt_r, d) * habs * detail::kron_id_left(isqrt_r, d);
    y = (y + y.adjoint()) / 2.0;
    const double viol = std::min(min_eigenvalue(y - j_choi), min_eigenvalue(y + j_choi));
    if (viol < 0.0) y += (-viol + 1e-15) * Mat::Identity(n, n);
    Eigen::SelfAdjointEigenSolver<Mat> ey(detail::partial_trace_out(y, d),
                                          Eigen::EigenvaluesOnly);
    upper = ey.eigenvalues().maxCoeff();
  };

  // Basis directions as sparse entry lists, in the exact coordinate order of
  // HermCoords::unpack; S^-1 E_ab S^-1 is then an outer product of a column
  // and a row of S^-1, which keeps the Hessian assembly at O(n^2) per column.
  struct DirTerm {
    Eigen::Index a, b;
    cplx c;
  };
  std::vector<std::vector<DirTerm>> dir_terms;
  std::vector<bool> dir_is_rho;
  {
    auto push_herm = [&](Eigen::Index dim, auto lift) {
      for (Eigen::Index i = 0; i < dim; ++i) dir_terms.push_back(lift(i, i, cplx(1, 0), true));
      for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index jj = i + 1; jj < dim; ++jj) {
          dir_terms.push_back(lift(i, jj, cplx(1, 0), false));
          dir_terms.push_back(lift(i, jj, cplx(0, 1), false));
        }
    };
    auto lift_z = [&](Eigen::Index i, Eigen::Index jj, cplx c, bool diag) {
      std::vector<DirTerm> terms{{i, jj, c}};
      if (!diag) terms.push_back({jj, i, std::conj(c)});
      return terms;
    };
    auto lift_rho = [&](Eigen::Index i, Eigen::Index jj, cplx c, bool diag) {
      std::vector<DirTerm> terms;
      for (Eigen::Index a = 0; a < d; ++a) {
        terms.push_back({a * d + i, a * d + jj, c});
        if (!diag) terms.push_back({a * d + jj, a * d + i, std::conj(c)});
      }
      return terms;
    };
    push_herm(n, lift_z);
    for (std::size_t k = 0; k < dir_terms.size(); ++k) dir_is_rho.push_back(false);
    push_herm(d, lift_rho);
    while (dir_is_rho.size() < dir_terms.size()) dir_is_rho.push_back(true);
  }

  double t = 1.0 / std::max(1.0, jnorm);
  const double mu = 25.0;
  int total_newton = 0;

  Mat u_plus(n, n), u_minus(n, n);
  for (int outer = 0; outer < 24; ++outer) {
    // Newton centering at this t
    for (int it = 0; it < 50; ++it) {
      Mat sp = splus(z, rho), sm = sminus(z, rho);
      Mat spi = sp.inverse(), smi = sm.inverse();
      Mat gz = t * j_choi + spi - smi;
      Mat grho = detail::partial_trace_out(spi + smi, d);
      RVec g = coords.pack_grad(gz, grho);

      RMat h(nv, nv);
      for (int l = 0; l < nv; ++l) {
        u_plus.setZero();
        u_minus.setZero();
        for (const DirTerm& term : dir_terms[static_cast<std::size_t>(l)]) {
          u_plus.noalias() += term.c * (spi.col(term.a) * spi.row(term.b));
          u_minus.noalias() += term.c * (smi.col(term.a) * smi.row(term.b));
        }
        if (dir_is_rho[static_cast<std::size_t>(l)])
          h.col(l) = coords.pack_grad(-u_plus + u_minus,
                                      detail::partial_trace_out(-u_plus - u_minus, d));
        else
          h.col(l) = coords.pack_grad(-u_plus - u_minus,
                                      detail::partial_trace_out(-u_plus + u_minus, d));
      }

      // KKT system for the equality-constrained Newton step
      RMat kkt = RMat::Zero(nv + 1, nv + 1);
      kkt.topLeftCorner(nv, nv) = (h + h.transpose()) / 2.0;
      kkt.topRightCorner(nv, 1) = cdir;
      kkt.bottomLeftCorner(1, nv) = cdir.transpose();
      RVec rhs(nv + 1);
      rhs.head(nv) = -g;
      rhs(nv) = 0.0;
      RVec sol = kkt.partialPivLu().solve(rhs);
      RVec du = sol.head(nv);
      ++total_newton;

      const double decrement2 = g.dot(du);  // positive for an ascent direction
      if (decrement2 < 1e-12) break;

      // backtracking line search into the cone
      bool feasible_now = false;
      const double base = barrier_value(t, z, rho, feasible_now);
      double alpha = 1.0;
      bool accepted = false;
      Mat zn, rhon;
      for (int bs = 0; bs < 60; ++bs) {
        Mat step_z, step_rho;
        coords.unpack(RVec(alpha * du), step_z, step_rho);
        zn = z + step_z;
        rhon = rho + step_rho;
        bool feas = false;
        const double val = barrier_value(t, zn, rhon, feas);
        if (feas && val >= base + 0.25 * alpha * decrement2) {
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) break;
      z = zn;
      rho = rhon;
    }

    double lower = 0.0, upper = 0.0;
    certify(rho, lower, upper);
    if (outer == 0 || lower > res.lower) res.lower = lower;
    if (outer == 0 || upper < res.value) res.value = upper;
    if (res.value - res.lower < tol * std::max(1.0, res.value)) {
      res.converged = true;
      break;
    }
    t *= mu;
  }

  res.newton_steps = total_newton;
  return res;
}

// certified lower bound: pure-state ascent with random restarts
inline double diamond_lower_bound_restarts(const SuperOp& delta, int restarts = 64,
                                           std::uint64_t seed = 12345) {
  const Eigen::Index d = delta.dim();
  const Eigen::Index dd = d * d;
  const Mat big = detail::superop_tensor_identity(delta, d);

  Philox rng(seed, 0xD1A30ull);
  auto random_state = [&]() {
    Vec psi(dd);
    for (Eigen::Index i = 0; i < dd; ++i) {
      // Box-Muller from counter-based uniforms
      const double u1 = std::max(rng.next_double(), 1e-300);
      const double u2 = rng.next_double();
      const double r = std::sqrt(-2.0 * std::log(u1));
      psi(i) = cplx(r * std::cos(2.0 * pi * u2), r * std::sin(2.0 * pi * u2));
    }
    psi.normalize();
    return psi;
  };

  double best = 0.0;
  for (int rs = 0; rs < restarts; ++rs) {
    Vec psi = random_state();
    double prev = -1.0;
    for (int it = 0; it < 200; ++it) {
      Mat x = psi * psi.adjoint();
      Mat m = unvec(big * vec(x));
      Eigen::SelfAdjointEigenSolver<Mat> es((m + m.adjoint()) / 2.0);
      const double val = es.eigenvalues().cwiseAbs().sum();
      if (val > best) best = val;
      if (val <= prev + 1e-12) break;
      prev = val;
      // ascent direction: adjoint channel applied to sign(m)
      Mat w = Mat::Zero(dd, dd);
      for (Eigen::Index k = 0; k < dd; ++k)
        w += (es.eigenvalues()(k) >= 0 ? 1.0 : -1.0) * es.eigenvectors().col(k) *
             es.eigenvectors().col(k).adjoint();
      Mat nmat = unvec(big.adjoint() * vec(w));
      nmat = (nmat + nmat.adjoint()) / 2.0;
      Eigen::SelfAdjointEigenSolver<Mat> en(nmat);
      Eigen::Index top;
      en.eigenvalues().maxCoeff(&top);
      psi = en.eigenvectors().col(top);
    }
  }
  return best;
}

struct DiamondDistance {
  double value;
  double lower;
  double upper;
  bool converged;
};

// ||A - B||_diamond per the trace-norm maximization over the doubled space
inline DiamondDistance diamond_distance_full(const SuperOp& a, const SuperOp& b,
                                             double tol = 1e-7) {
  if (a.dim2() != b.dim2()) throw dimension_error("diamond_distance: dimension mismatch");
  SuperOp delta(Mat(a.m - b.m));
  Mat j = detail::choi_unnormalized(delta);
  j = (j + j.adjoint()) / 2.0;
  DiamondResult r = diamond_norm_hermitian(j, tol);
  return {r.value, r.lower, r.value, r.converged};
}

inline double diamond_distance(const SuperOp& a, const SuperOp& b, double tol = 1e-7) {
  return diamond_distance_full(a, b, tol).value;
}

// Mean diamond distance over the shared gate labels, SPAM excluded. The
// single-qubit entries are compared through their one-qubit factors (the
// diamond norm is stable under tensoring with the identity).
inline double avg_gate_distance(const GateSet& estimated, const GateSet& truth,
                                const std::vector<std::string>& include = {}) {
  double acc = 0.0;
  int count = 0;
  for (const auto& e : estimated.gates) {
    if (!include.empty() &&
        std::find(include.begin(), include.end(), e.label) == include.end())
      continue;
    const auto& t = truth.find(e.label);
    if (e.qubit >= 0 && e.local && t.local)
      acc += diamond_distance(*e.local, *t.local);
    else
      acc += diamond_distance(e.channel, t.channel);
    ++count;
  }
  if (count == 0) throw config_error("avg_gate_distance: no gates matched the filter");
  return acc / count;
}

}  // namespace lsgst

#endif
