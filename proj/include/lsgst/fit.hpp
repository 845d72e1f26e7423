#ifndef LSGST_FIT_HPP
#define LSGST_FIT_HPP

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lsgst/cost.hpp"
#include "lsgst/fisher.hpp"
#include "lsgst/optimize.hpp"
#include "lsgst/philox.hpp"

namespace lsgst {

struct FitConfig {
  CostKind cost = CostKind::ls;
  bool cp_constraint = false;  // CP relaxed by default
  int multistart = 1;
  double grad_tol = 1e-10;
  double step_tol = 1e-12;
  int max_iterations = 400;
  SequenceMode mode = SequenceMode::context_independent;
  bool use_simplex = true;
  int simplex_budget = 300;
  bool errors_from_fi = true;
  std::uint64_t seed = 1;

  void validate() const {
    if (grad_tol <= 0 || step_tol <= 0) throw config_error("FitConfig: tolerances must be > 0");
    if (multistart < 1) throw config_error("FitConfig: multistart must be >= 1");
  }
};

struct FitResult {
  ThetaVector theta_hat;
  double cost = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<double> cost_trace;
  RVec std_errors;  // per-parameter, from the design FI at theta_hat
  int starts_used = 1;
};

namespace detail {

// optimizer bounds from the layout: SPAM stays a probability, rates are
// nonnegative only when the CP constraint is active
inline Bounds fit_bounds(const ThetaLayout& lo, bool cp_on) {
  Bounds b = Bounds::unbounded(lo.size());
  if (cp_on) {
    b.lower(0) = 0.0;  // gamma_th
    b.lower(1) = 0.0;  // gamma_d
    for (int g = 0; g < 10; ++g) {
      b.lower(lo.gate_offset(g)) = 0.0;  // gamma1
      if (lo.per_gate() == 3) b.lower(lo.gate_offset(g) + 2) = 0.0;
    }
  }
  const int so = lo.spam_offset();
  b.lower(so) = 0.0;
  b.upper(so) = 1.0;
  b.lower(so + 1) = 0.0;
  b.upper(so + 1) = 0.5;
  b.lower(so + 2) = 0.0;
  b.upper(so + 2) = 0.5;
  return b;
}

}  // namespace detail

// Constrained multi-parameter point estimation: a short simplex stage for
// robustness, then Levenberg-Marquardt (least-squares cost) or BFGS
// (likelihood cost) refinement with finite-difference derivatives.
inline FitResult fit(const Dataset& ds, const FitConfig& cfg, const ThetaVector& theta0,
                     const ModelContext& ctx) {
  cfg.validate();
  ds.validate();
  const ThetaLayout layout = theta0.layout;
  const Bounds bounds = detail::fit_bounds(layout, cfg.cp_constraint);

  auto cost_fn = [&](const RVec& x) -> double {
    try {
      ThetaVector t(layout, x);
      return (cfg.cost == CostKind::ml) ? cost_ml(t, ds, ctx, cfg.mode)
                                        : cost_ls(t, ds, ctx, cfg.mode);
    } catch (const std::exception&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  auto residual_fn = [&](const RVec& x) -> std::optional<RVec> {
    try {
      ThetaVector t(layout, x);
      return ls_residuals(t, ds, ctx, cfg.mode);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };

  FitResult best;
  best.cost = std::numeric_limits<double>::infinity();
  Philox jitter(cfg.seed, 0xF17ull);

  for (int start = 0; start < cfg.multistart; ++start) {
    RVec x = theta0.values;
    if (start > 0)
      for (Eigen::Index i = 0; i < x.size(); ++i)
        x(i) += 2e-3 * (jitter.next_double() - 0.5);
    x = bounds.clamp(x);

    std::vector<double> trace;
    if (cfg.use_simplex) {
      RVec scale = RVec::Constant(x.size(), 1e-3);
      SimplexResult s = nelder_mead(cost_fn, x, scale, cfg.simplex_budget, bounds);
      x = s.x;
      trace.push_back(s.value);
    }

    GradientResult g;
    if (cfg.cost == CostKind::ls) {
      g = levenberg_marquardt(residual_fn, x, bounds, cfg.max_iterations, cfg.grad_tol,
                              cfg.step_tol);
    } else {
      // least-squares pass as a robust warm start, then the likelihood polish
      GradientResult warm = levenberg_marquardt(residual_fn, x, bounds, cfg.max_iterations,
                                                cfg.grad_tol, cfg.step_tol);
      g = bfgs(cost_fn, warm.x, bounds, cfg.max_iterations, cfg.grad_tol, cfg.step_tol);
      g.cost_trace.insert(g.cost_trace.begin(), cost_fn(warm.x));
    }

    const double final_cost = cost_fn(g.x);
    if (final_cost < best.cost) {
      best.theta_hat = ThetaVector(layout, g.x);
      best.cost = final_cost;
      best.converged = g.converged;
      best.iterations = g.iterations;
      best.cost_trace = trace;
      best.cost_trace.insert(best.cost_trace.end(), g.cost_trace.begin(), g.cost_trace.end());
      best.starts_used = start + 1;
    }
  }

  if (cfg.errors_from_fi) {
    // gradient-only design FI (the Hessian term cancels over outcomes)
    try {
      Design d;
      long n_avg = 0;
      for (const auto& rec : ds.records) {
        d.circuits.push_back(rec.circuit);
        n_avg += rec.total();
      }
      d.n_samples = n_avg / static_cast<long>(ds.records.size());
      FisherOptions fopt;
      fopt.with_hessian_term = false;
      FisherMatrix f = fisher_design(d, best.theta_hat, ctx, cfg.mode, fopt);
      best.std_errors = crb_bounds(f).per_parameter;
    } catch (const std::exception&) {
      best.std_errors = RVec::Zero(layout.size());
    }
  }
  return best;
}

// the r-th gate of a fitted context-dependent sequence
inline SuperOp recover_gate_at(int r, const ThetaVector& theta_hat, const ModelContext& ctx) {
  GateSet gs = build_gateset_relaxed(theta_hat, ctx);
  return intermediate_superop(r, gs.ls);
}

struct InvertedThermal {
  double gamma_th;
  double error;
};

// Undo the p-gate amplification: Gamma_th = Gamma_th^p / A(p,x) with the
// error propagated through f(Gamma) = exp(Gamma A(p,x)). The operation is
// undefined at trajectory closure, where the signal carries no information
// about the thermal parameter.
inline InvertedThermal invert_amplification(double gamma_th_p, double error_p, int p, double x) {
  const double a = amplification_factor(p, x);
  if (a < 1e-10)
    throw sensitivity_error("invert_amplification: A(p,x) = 0, no thermal sensitivity");
  const double gamma_th = gamma_th_p / a;
  const double eps_f = std::exp(gamma_th_p) * error_p;       // error of f = exp(Gamma A)
  const double fprime = a * std::exp(gamma_th * a);          // f'(Gamma) at the estimate
  return {gamma_th, eps_f / fprime};
}

inline nlohmann::ordered_json fit_result_to_json(const FitResult& r) {
  nlohmann::ordered_json j;
  j["schema"] = "lsgst-fit-v1";
  j["theta_hat"] = theta_to_json(r.theta_hat);
  j["cost"] = r.cost;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["starts_used"] = r.starts_used;
  if (r.std_errors.size() > 0) {
    std::vector<double> errs(r.std_errors.data(), r.std_errors.data() + r.std_errors.size());
    j["std_errors"] = errs;
  }
  if (!r.cost_trace.empty()) {
    j["cost_trace"] = {{"initial", r.cost_trace.front()},
                       {"final", r.cost_trace.back()},
                       {"accepted_steps", r.cost_trace.size()}};
  }
  return j;
}

}  // namespace lsgst

#endif
