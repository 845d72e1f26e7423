#ifndef LSGST_GATE_SET_HPP
#define LSGST_GATE_SET_HPP

#include <optional>
#include <string>
#include <vector>

#include "lsgst/common.hpp"
#include "lsgst/ls_channel.hpp"
#include "lsgst/povm.hpp"
#include "lsgst/single_qubit.hpp"
#include "lsgst/theta.hpp"

namespace lsgst {

struct SpamModel {
  double eps_rho = 0.0;  // state-preparation depolarization
  double eps_m0 = 0.0;   // readout flip probability, qubit 0
  double eps_m1 = 0.0;   // readout flip probability, qubit 1

  void validate() const {
    if (eps_rho < 0.0 || eps_rho > 1.0) throw config_error("SpamModel: eps_rho outside [0,1]");
    if (eps_m0 < 0.0 || eps_m0 > 0.5 || eps_m1 < 0.0 || eps_m1 > 0.5)
      throw config_error("SpamModel: readout flips outside [0,1/2]");
  }
};

inline Mat spam_rho0(const SpamModel& s) {
  Mat rho = Mat::Zero(4, 4);
  rho(0, 0) = 1.0;
  return (1.0 - s.eps_rho) * rho + s.eps_rho * 0.25 * Mat::Identity(4, 4);
}

// computational-basis POVM with independent per-qubit readout flips
inline Povm spam_povm(const SpamModel& s) {
  Povm m;
  const double e[2] = {s.eps_m0, s.eps_m1};
  for (int b0 = 0; b0 < 2; ++b0)
    for (int b1 = 0; b1 < 2; ++b1) {
      Mat eff = Mat::Zero(4, 4);
      for (int a0 = 0; a0 < 2; ++a0)
        for (int a1 = 0; a1 < 2; ++a1) {
          const double c0 = (b0 == a0) ? 1.0 - e[0] : e[0];
          const double c1 = (b1 == a1) ? 1.0 - e[1] : e[1];
          eff(2 * a0 + a1, 2 * a0 + a1) = c0 * c1;
        }
      m.effects.push_back(eff);
      m.labels.push_back(std::to_string(b0) + std::to_string(b1));
    }
  return m;
}

// model constants that are fixed by the physical configuration rather than
// estimated: phase advance x, zeta prefactor, and defaults for the angles
// when they are not in theta
struct ModelContext {
  double x = 0.0;
  double zeta_prefactor = 0.0;
  double theta_ls = pi / 4.0;
  double omega0_t = 0.0;
};

struct GateSet {
  struct Entry {
    std::string label;
    int qubit;  // -1 for the LS gate
    SuperOp channel;               // 16x16, on the full register
    std::optional<SuperOp> local;  // 4x4 single-qubit factor when qubit >= 0
    SingleQubitNoise noise;        // meaningful when qubit >= 0
  };

  Mat rho0;
  std::vector<Entry> gates;
  Povm povm;
  LsParams ls;        // parameters of the LS gate entry
  SpamModel spam;
  ThetaLayout layout;

  const Entry& find(const std::string& label) const {
    for (const Entry& e : gates)
      if (e.label == label) return e;
    throw config_error("GateSet: unknown gate label " + label);
  }
  bool has(const std::string& label) const {
    for (const Entry& e : gates)
      if (e.label == label) return true;
    return false;
  }
};

inline std::string gate_label(const char* name, int qubit) {
  return std::string(name) + ":" + std::to_string(qubit);
}

// deterministic assembly of the full noisy gate set from theta
inline GateSet build_gateset(const ThetaVector& theta, const ModelContext& ctx) {
  theta.layout.validate();
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
  gs.spam.validate();
  gs.rho0 = spam_rho0(gs.spam);
  gs.povm = spam_povm(gs.spam);
  return gs;
}

// inverse of build_gateset on its image
inline ThetaVector theta_of(const GateSet& gs) {
  ThetaVector t(gs.layout);
  t[0] = gs.ls.gamma_th;
  t[1] = gs.ls.gamma_d;
  const int pg = gs.layout.per_gate();
  for (int i = 0; i < 10; ++i) {
    const auto& e = gs.gates[static_cast<std::size_t>(i)];
    const int off = gs.layout.gate_offset(i);
    t[off] = e.noise.gamma1;
    t[off + 1] = e.noise.delta1;
    if (pg == 3) t[off + 2] = e.noise.dgamma;
  }
  const int so = gs.layout.spam_offset();
  t[so] = gs.spam.eps_rho;
  t[so + 1] = gs.spam.eps_m0;
  t[so + 2] = gs.spam.eps_m1;
  if (gs.layout.with_theta_ls) t[gs.layout.theta_ls_offset()] = gs.ls.theta_ls;
  if (gs.layout.with_omega0) t[gs.layout.omega0_offset()] = gs.ls.omega0_t;
  return t;
}

}  // namespace lsgst

#endif
