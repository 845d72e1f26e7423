#ifndef LSGST_COST_HPP
#define LSGST_COST_HPP

#include <cmath>
#include <vector>

#include "lsgst/dataset.hpp"
#include "lsgst/gate_set.hpp"
#include "lsgst/probability.hpp"

namespace lsgst {

inline constexpr double prob_floor = 1e-12;  // inside logs and denominators only

enum class CostKind { ml, ls };

// gate-set assembly for cost evaluation: SPAM validation is skipped, the
// optimizer explores (and rejects) unphysical corners itself
inline GateSet build_gateset_relaxed(const ThetaVector& theta, const ModelContext& ctx) {
  GateSet gs;
  gs.layout = theta.layout;
  const int pg = theta.layout.per_gate();
  int gate_index = 0;
  for (int q = 0; q < 2; ++q)
    for (const auto& [name, angles] : single_qubit_alphabet()) {
      SingleQubitGateSpec spec{angles.first, angles.second, q};
      SingleQubitNoise noise;
      const int off = theta.layout.gate_offset(gate_index);
      noise.gamma1 = theta[off];
      noise.delta1 = theta[off + 1];
      if (pg == 3) noise.dgamma = theta[off + 2];
      SuperOp local = noisy_single_qubit_local(spec, noise);
      gs.gates.push_back({gate_label(name, q), q, embed_on_qubit(local, q), local, noise});
      ++gate_index;
    }
  LsParams lp;
  lp.gamma_th = theta[0];
  lp.gamma_d = theta[1];
  lp.x = ctx.x;
  lp.zeta_prefactor = ctx.zeta_prefactor;
  lp.theta_ls = theta.layout.with_theta_ls ? theta[theta.layout.theta_ls_offset()] : ctx.theta_ls;
  lp.omega0_t = theta.layout.with_omega0 ? theta[theta.layout.omega0_offset()] : ctx.omega0_t;
  gs.ls = lp;
  gs.gates.push_back({"LS", -1, ls_gate_superop(lp), std::nullopt, {}});
  const int so = theta.layout.spam_offset();
  gs.spam = SpamModel{theta[so], theta[so + 1], theta[so + 2]};
  gs.rho0 = spam_rho0(gs.spam);
  gs.povm = spam_povm(gs.spam);
  return gs;
}

inline std::vector<RVec> model_probabilities(const Dataset& ds, const ThetaVector& theta,
                                             const ModelContext& ctx, SequenceMode mode) {
  GateSet gs = build_gateset_relaxed(theta, ctx);
  std::vector<RVec> out;
  out.reserve(ds.records.size());
  for (const auto& rec : ds.records)
    out.push_back(circuit_probabilities(rec.circuit, gs, mode, false));
  return out;
}

// C_ML = -sum_gamma sum_mu f log p. The model probability is clamped to
// [1e-12, 1] inside the log: with the CP constraint relaxed the raw model
// can emit p > 1, and an uncapped log would make the cost unbounded below.
inline double cost_ml(const ThetaVector& theta, const Dataset& ds, const ModelContext& ctx,
                      SequenceMode mode) {
  const auto probs = model_probabilities(ds, theta, ctx, mode);
  double cost = 0.0;
  for (std::size_t k = 0; k < ds.records.size(); ++k) {
    const RVec f = ds.records[k].frequencies();
    for (int mu = 0; mu < 4; ++mu) {
      if (f(mu) == 0.0) continue;
      cost -= f(mu) * std::log(std::min(std::max(probs[k](mu), prob_floor), 1.0));
    }
  }
  return cost;
}

// C_LS = sum (f - p)^2 / p, with p floored inside the denominator
inline double cost_ls(const ThetaVector& theta, const Dataset& ds, const ModelContext& ctx,
                      SequenceMode mode) {
  const auto probs = model_probabilities(ds, theta, ctx, mode);
  double cost = 0.0;
  for (std::size_t k = 0; k < ds.records.size(); ++k) {
    const RVec f = ds.records[k].frequencies();
    for (int mu = 0; mu < 4; ++mu) {
      const double d = f(mu) - probs[k](mu);
      cost += d * d / std::max(probs[k](mu), prob_floor);
    }
  }
  return cost;
}

// weighted residuals whose squared norm is C_LS (up to the fixed 1/2 of the
// optimizer convention)
inline RVec ls_residuals(const ThetaVector& theta, const Dataset& ds, const ModelContext& ctx,
                         SequenceMode mode) {
  const auto probs = model_probabilities(ds, theta, ctx, mode);
  RVec r(static_cast<Eigen::Index>(4 * ds.records.size()));
  Eigen::Index i = 0;
  for (std::size_t k = 0; k < ds.records.size(); ++k) {
    const RVec f = ds.records[k].frequencies();
    for (int mu = 0; mu < 4; ++mu)
      r(i++) = (f(mu) - probs[k](mu)) / std::sqrt(std::max(probs[k](mu), prob_floor));
  }
  return r;
}

}  // namespace lsgst

#endif
