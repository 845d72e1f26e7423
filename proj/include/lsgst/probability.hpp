#ifndef LSGST_PROBABILITY_HPP
#define LSGST_PROBABILITY_HPP

#include <string>
#include <vector>

#include "lsgst/circuit.hpp"
#include "lsgst/gate_set.hpp"
#include "lsgst/ls_channel.hpp"

namespace lsgst {

namespace detail {

inline bool is_ls_only_germ(const Circuit& c) {
  return c.germ.size() == 1 && c.germ[0] == "LS";
}

inline bool contains_ls(const std::vector<std::string>& labels) {
  for (const auto& l : labels)
    if (l == "LS") return true;
  return false;
}

}  // namespace detail

// Exact outcome distribution of a circuit. In the context-dependent mode the
// LS germ power is evaluated through the sequence channel, never by reusing
// the single-gate map p times; the derivation only covers p consecutive LS
// gates, so LS occurrences outside a pure LS germ are rejected in that mode.
inline RVec circuit_probabilities(const Circuit& c, const GateSet& gs, SequenceMode mode,
                                  bool validated = true) {
  if (c.power < 0) throw design_error("circuit_probabilities: negative power");
  if (mode == SequenceMode::context_dependent) {
    const bool ls_in_fiducials = detail::contains_ls(c.prep) || detail::contains_ls(c.meas);
    const bool mixed_germ = detail::contains_ls(c.germ) && !detail::is_ls_only_germ(c);
    if (ls_in_fiducials || mixed_germ)
      throw design_error(
          "context-dependent evaluation requires the LS gate to appear only as the germ");
  }

  Vec v = vec(gs.rho0);
  for (const std::string& label : c.prep) v = gs.find(label).channel.m * v;

  if (c.power > 0) {
    if (detail::is_ls_only_germ(c)) {
      const auto diag = sequence_diagonal(SequenceParams{gs.ls, c.power}, mode);
      v = diag.cwiseProduct(v);
    } else {
      for (int rep = 0; rep < c.power; ++rep)
        for (const std::string& label : c.germ) v = gs.find(label).channel.m * v;
    }
  }

  for (const std::string& label : c.meas) v = gs.find(label).channel.m * v;

  RVec p(4);
  for (int mu = 0; mu < 4; ++mu) {
    double acc = 0.0;
    const Mat& eff = gs.povm.effects[static_cast<std::size_t>(mu)];
    for (int k = 0; k < 4; ++k) acc += eff(k, k).real() * v(k * 4 + k).real();
    p(mu) = acc;
  }

  if (validated) {
    for (int mu = 0; mu < 4; ++mu) {
      if (p(mu) < -tol_psd)
        throw physicality_error("circuit_probabilities: negative probability at outcome " +
                                gs.povm.labels[static_cast<std::size_t>(mu)]);
      p(mu) = std::max(0.0, p(mu));
    }
    if (std::abs(p.sum() - 1.0) > 1e-10)
      throw physicality_error("circuit_probabilities: distribution does not sum to 1");
  }
  return p;
}

inline std::vector<RVec> design_probabilities(const std::vector<Circuit>& circuits,
                                              const GateSet& gs, SequenceMode mode,
                                              bool validated = true) {
  std::vector<RVec> out;
  out.reserve(circuits.size());
  for (const Circuit& c : circuits) out.push_back(circuit_probabilities(c, gs, mode, validated));
  return out;
}

}  // namespace lsgst

#endif
