#ifndef LSGST_OPTIMIZE_HPP
#define LSGST_OPTIMIZE_HPP

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "lsgst/common.hpp"

namespace lsgst {

// box bounds; infinities mean unconstrained
struct Bounds {
  RVec lower, upper;

  static Bounds unbounded(int n) {
    Bounds b;
    b.lower = RVec::Constant(n, -std::numeric_limits<double>::infinity());
    b.upper = RVec::Constant(n, std::numeric_limits<double>::infinity());
    return b;
  }
  RVec clamp(RVec x) const {
    for (Eigen::Index i = 0; i < x.size(); ++i)
      x(i) = std::min(std::max(x(i), lower(i)), upper(i));
    return x;
  }
  bool contains(const RVec& x) const {
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (x(i) < lower(i) || x(i) > upper(i)) return false;
    return true;
  }
};

using ScalarFn = std::function<double(const RVec&)>;
using ResidualFn = std::function<std::optional<RVec>(const RVec&)>;

// ---------------------------------------------------------------------------
// Nelder-Mead simplex, used as the robust first stage
// ---------------------------------------------------------------------------

struct SimplexResult {
  RVec x;
  double value = std::numeric_limits<double>::infinity();
  int evals = 0;
};

inline SimplexResult nelder_mead(const ScalarFn& f, const RVec& x0, const RVec& scale,
                                 int max_evals, const Bounds& bounds) {
  const int n = static_cast<int>(x0.size());
  std::vector<RVec> xs;
  std::vector<double> fs;
  int evals = 0;
  auto eval = [&](const RVec& x) {
    ++evals;
    if (!bounds.contains(x)) return std::numeric_limits<double>::infinity();
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  xs.push_back(x0);
  fs.push_back(eval(x0));
  for (int i = 0; i < n; ++i) {
    RVec x = x0;
    x(i) += scale(i);
    xs.push_back(bounds.clamp(x));
    fs.push_back(eval(xs.back()));
  }

  auto order = [&]() {
    std::vector<int> idx(xs.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<int>(k);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return fs[static_cast<std::size_t>(a)] < fs[static_cast<std::size_t>(b)];
    });
    std::vector<RVec> xs2;
    std::vector<double> fs2;
    for (int k : idx) {
      xs2.push_back(xs[static_cast<std::size_t>(k)]);
      fs2.push_back(fs[static_cast<std::size_t>(k)]);
    }
    xs = std::move(xs2);
    fs = std::move(fs2);
  };

  while (evals < max_evals) {
    order();
    if (std::abs(fs.front() - fs.back()) <
        1e-14 * (1.0 + std::abs(fs.front())))
      break;
    RVec centroid = RVec::Zero(n);
    for (int k = 0; k < n; ++k) centroid += xs[static_cast<std::size_t>(k)];
    centroid /= double(n);

    const RVec& worst = xs.back();
    RVec xr = bounds.clamp(centroid + (centroid - worst));
    double fr = eval(xr);
    if (fr < fs.front()) {
      RVec xe = bounds.clamp(centroid + 2.0 * (centroid - worst));
      double fe = eval(xe);
      if (fe < fr) {
        xs.back() = xe;
        fs.back() = fe;
      } else {
        xs.back() = xr;
        fs.back() = fr;
      }
    } else if (fr < fs[static_cast<std::size_t>(n - 1)]) {
      xs.back() = xr;
      fs.back() = fr;
    } else {
      RVec xc = bounds.clamp(centroid + 0.5 * (worst - centroid));
      double fc = eval(xc);
      if (fc < fs.back()) {
        xs.back() = xc;
        fs.back() = fc;
      } else {
        for (std::size_t k = 1; k < xs.size(); ++k) {
          xs[k] = bounds.clamp(xs.front() + 0.5 * (xs[k] - xs.front()));
          fs[k] = eval(xs[k]);
        }
      }
    }
  }
  order();
  return {xs.front(), fs.front(), evals};
}

// ---------------------------------------------------------------------------
// Levenberg-Marquardt on a residual vector (least-squares refinement)
// ---------------------------------------------------------------------------

struct GradientResult {
  RVec x;
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iterations = 0;
  std::vector<double> cost_trace;
};

inline RMat fd_jacobian(const ResidualFn& r, const RVec& x, double step) {
  const auto r0 = r(x);
  if (!r0) throw solver_error("fd_jacobian: residual undefined at base point");
  RMat j(r0->size(), x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    RVec xp = x, xm = x;
    xp(k) += step;
    xm(k) -= step;
    const auto rp = r(xp);
    const auto rm = r(xm);
    if (rp && rm)
      j.col(k) = (*rp - *rm) / (2.0 * step);
    else if (rp)
      j.col(k) = (*rp - *r0) / step;
    else if (rm)
      j.col(k) = (*r0 - *rm) / step;
    else
      j.col(k).setZero();
  }
  return j;
}

inline GradientResult levenberg_marquardt(const ResidualFn& rfn, RVec x, const Bounds& bounds,
                                          int max_iter = 200, double grad_tol = 1e-10,
                                          double step_tol = 1e-12, double fd_step = 1e-6) {
  GradientResult out;
  auto cost_of = [&](const RVec& xx) -> double {
    const auto r = rfn(xx);
    return r ? 0.5 * r->squaredNorm() : std::numeric_limits<double>::infinity();
  };
  double cost = cost_of(x);
  out.cost_trace.push_back(cost);
  double lambda = 1e-3;

  for (int it = 0; it < max_iter; ++it) {
    ++out.iterations;
    const auto r0 = rfn(x);
    if (!r0) break;
    RMat j = fd_jacobian(rfn, x, fd_step);
    RVec g = j.transpose() * (*r0);
    if (g.cwiseAbs().maxCoeff() < grad_tol) {
      out.converged = true;
      break;
    }
    RMat jtj = j.transpose() * j;
    bool stepped = false;
    for (int tries = 0; tries < 30; ++tries) {
      RMat a = jtj;
      a.diagonal() += lambda * (jtj.diagonal().array() + 1e-12).matrix();
      RVec delta = a.ldlt().solve(-g);
      RVec xn = bounds.clamp(x + delta);
      const double cn = cost_of(xn);
      if (cn < cost) {
        const double actual_step = (xn - x).cwiseAbs().maxCoeff();
        x = xn;
        cost = cn;
        out.cost_trace.push_back(cost);
        lambda = std::max(lambda * 0.3, 1e-12);
        stepped = true;
        if (actual_step < step_tol) {
          out.converged = true;
          it = max_iter;
        }
        break;
      }
      lambda *= 8.0;
    }
    if (!stepped) {
      out.converged = g.cwiseAbs().maxCoeff() < 1e2 * grad_tol;
      break;
    }
  }
  out.x = x;
  out.value = cost;
  return out;
}

// ---------------------------------------------------------------------------
// Projected BFGS with finite-difference gradients (general refinement)
// ---------------------------------------------------------------------------

inline RVec fd_gradient(const ScalarFn& f, const RVec& x, double step) {
  RVec g(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    RVec xp = x, xm = x;
    xp(k) += step;
    xm(k) -= step;
    g(k) = (f(xp) - f(xm)) / (2.0 * step);
  }
  return g;
}

inline GradientResult bfgs(const ScalarFn& f, RVec x, const Bounds& bounds, int max_iter = 300,
                           double grad_tol = 1e-10, double step_tol = 1e-12,
                           double fd_step = 1e-6) {
  GradientResult out;
  const int n = static_cast<int>(x.size());
  RMat hinv = RMat::Identity(n, n);
  double fx = f(x);
  out.cost_trace.push_back(fx);
  RVec g = fd_gradient(f, x, fd_step);

  for (int it = 0; it < max_iter; ++it) {
    ++out.iterations;
    if (g.cwiseAbs().maxCoeff() < grad_tol) {
      out.converged = true;
      break;
    }
    RVec dir = -(hinv * g);
    if (dir.dot(g) > 0) {
      hinv = RMat::Identity(n, n);
      dir = -g;
    }
    double alpha = 1.0;
    bool accepted = false;
    RVec xn;
    double fn = fx;
    for (int bs = 0; bs < 50; ++bs) {
      xn = bounds.clamp(x + alpha * dir);
      fn = f(xn);
      if (std::isfinite(fn) && fn <= fx + 1e-4 * alpha * g.dot(dir)) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
    RVec gn = fd_gradient(f, xn, fd_step);
    RVec s = xn - x, y = gn - g;
    const double sy = s.dot(y);
    if (sy > 1e-14) {
      RMat left = RMat::Identity(n, n) - (s * y.transpose()) / sy;
      hinv = left * hinv * left.transpose() + (s * s.transpose()) / sy;
    }
    const double step_size = s.cwiseAbs().maxCoeff();
    x = xn;
    fx = fn;
    g = gn;
    out.cost_trace.push_back(fx);
    if (step_size < step_tol) {
      out.converged = true;
      break;
    }
  }
  out.x = x;
  out.value = fx;
  return out;
}

}  // namespace lsgst

#endif
