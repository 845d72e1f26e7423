#ifndef LSGST_PHYSICAL_HPP
#define LSGST_PHYSICAL_HPP

#include <array>
#include <cmath>

#include "lsgst/gate_set.hpp"
#include "lsgst/ls_channel.hpp"
#include "lsgst/spectra.hpp"

namespace lsgst {

// Trap, laser and noise parameters from which every model parameter derives.
// The beat note sits one com detuning above the com mode, which closes the
// com trajectory at t_g and keeps J(t_g) positive with the sign conventions
// used here.
struct PhysicalConfig {
  double omega_z = 2.0 * pi * 1.0e6;  // axial trap frequency, rad/s
  double gate_time = 97.0e-6;         // t_g, s
  double eta_com = 0.1;               // com Lamb-Dicke parameter
  double nbar_com = 0.0;
  double nbar_b = 5.0;                // breathing-mode mean phonon number
  double stark_shift = 2.0 * pi * 5.0e4;  // |Omega_L| before calibration
  bool calibrate = true;              // rescale |Omega_L| so J(t_g) = pi/4
  OuProcess ou{2.0e9, 5.0e-4};        // magnetic frequency noise
  double omega0_t = 0.0;              // accumulated local phase per gate

  void validate() const {
    if (!(omega_z > 0.0) || !(gate_time > 0.0))
      throw config_error("PhysicalConfig: omega_z and gate_time must be > 0");
    ou.validate();
  }
};

struct DerivedModel {
  std::array<ModeSpec, 2> modes;
  LaserDrive drive;
  LsParams ls;

  const ModeSpec& com() const { return modes[0]; }
  const ModeSpec& breathing() const { return modes[1]; }

  ModelContext context() const {
    return ModelContext{ls.x, ls.zeta_prefactor, ls.theta_ls, ls.omega0_t};
  }
};

inline DerivedModel derive_model(const PhysicalConfig& cfg) {
  cfg.validate();
  DerivedModel m;
  const double beat = cfg.omega_z + 2.0 * pi / cfg.gate_time;
  m.modes = make_modes(cfg.omega_z, beat, cfg.eta_com, cfg.nbar_com, cfg.nbar_b);
  for (const ModeSpec& mode : m.modes) mode.validate();
  m.drive = LaserDrive{cfg.stark_shift, beat, 0.0, 0.0, cfg.gate_time, true};
  m.drive.validate_com_closure(m.com());
  if (cfg.calibrate) m.drive = calibrate_force(m.modes, m.drive);

  m.ls.gamma_d = gamma_d_closed(cfg.ou, cfg.gate_time);
  m.ls.gamma_th = gamma_th_closed(m.breathing(), m.drive);
  m.ls.theta_ls = coupling_strength(m.modes, m.drive, cfg.gate_time);
  m.ls.omega0_t = cfg.omega0_t;
  m.ls.x = m.breathing().omega * cfg.gate_time;
  const double r = m.drive.stark_shift * m.breathing().eta / m.breathing().delta;
  m.ls.zeta_prefactor = r * r;
  return m;
}

// theta at the physically derived truth, with SPAM errors supplied separately
inline ThetaVector physical_theta(const DerivedModel& m, const ThetaLayout& layout,
                                  const SpamModel& spam = {},
                                  const SingleQubitNoise& sq = {}) {
  ThetaVector t(layout);
  t[0] = m.ls.gamma_th;
  t[1] = m.ls.gamma_d;
  for (int g = 0; g < 10; ++g) {
    const int off = layout.gate_offset(g);
    t[off] = sq.gamma1;
    t[off + 1] = sq.delta1;
    if (layout.per_gate() == 3) t[off + 2] = sq.dgamma;
  }
  const int so = layout.spam_offset();
  t[so] = spam.eps_rho;
  t[so + 1] = spam.eps_m0;
  t[so + 2] = spam.eps_m1;
  if (layout.with_theta_ls) t[layout.theta_ls_offset()] = m.ls.theta_ls;
  if (layout.with_omega0) t[layout.omega0_offset()] = m.ls.omega0_t;
  return t;
}

}  // namespace lsgst

#endif
