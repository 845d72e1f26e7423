#ifndef LSGST_SPECTRA_HPP
#define LSGST_SPECTRA_HPP

#include <array>
#include <cmath>
#include <vector>

#include "lsgst/common.hpp"
#include "lsgst/quadrature.hpp"

namespace lsgst {

// ---------------------------------------------------------------------------
// Classical frequency noise: Ornstein-Uhlenbeck process
// ---------------------------------------------------------------------------

struct OuProcess {
  double c;      // diffusion constant, s^-3
  double tau_c;  // correlation time, s

  void validate() const {
    if (!(c > 0.0) || !(tau_c > 0.0)) throw config_error("OuProcess: c, tau_c must be > 0");
  }
};

// Lorentzian PSD of the OU process
inline double ou_psd(double omega, const OuProcess& p) {
  const double wt = omega * p.tau_c;
  return p.c * p.tau_c * p.tau_c / (1.0 + wt * wt);
}

// free-induction filter F(w,t) = (1 - cos(wt)) / (2 pi w^2), with the
// removable singularity at w = 0 replaced by its limit t^2 / (4 pi)
inline double filter_function(double omega, double t) {
  if (t < 0.0) throw config_error("filter_function: t must be >= 0");
  const double wt = omega * t;
  if (std::abs(wt) < 1e-6) return t * t / (4.0 * pi) * (1.0 - wt * wt / 12.0);
  return (1.0 - std::cos(wt)) / (2.0 * pi * omega * omega);
}

// closed form of the filtered OU spectrum
inline double gamma_d_closed(const OuProcess& p, double t) {
  if (t < 0.0) throw config_error("gamma_d_closed: t must be >= 0");
  return 0.5 * p.c * p.tau_c * p.tau_c * (t + p.tau_c * (std::exp(-t / p.tau_c) - 1.0));
}

// quadrature route for the same quantity, used as an independent oracle
inline double gamma_d_quadrature(const OuProcess& p, double t, double abs_tol = 1e-10) {
  p.validate();
  const double omega_max = std::max(100.0 / p.tau_c, t > 0.0 ? 100.0 / t : 0.0);
  auto integrand = [&](double w) { return ou_psd(w, p) * filter_function(w, t); };
  // scale the absolute tolerance to the magnitude of the result
  const double scale = std::max(1.0, gamma_d_closed(p, t));
  return detail::integrate_adaptive(integrand, -omega_max, omega_max, abs_tol * scale);
}

// ---------------------------------------------------------------------------
// Axial modes of the two-ion crystal and the driving laser
// ---------------------------------------------------------------------------

inline constexpr double breathing_ratio = 1.7320508075688772;  // sqrt(3)

struct ModeSpec {
  int index;        // 1 = com, 2 = breathing
  double omega_z;   // axial trap frequency, rad/s
  double omega;     // mode frequency: omega_z or sqrt(3) omega_z
  double delta;     // detuning omega - beat_note
  double eta;       // Lamb-Dicke parameter
  double nbar;      // mean phonon number

  void validate() const {
    if (index != 1 && index != 2) throw config_error("ModeSpec: index must be 1 or 2");
    const double expected = (index == 1) ? omega_z : breathing_ratio * omega_z;
    if (std::abs(omega - expected) > 1e-6 * omega_z)
      throw config_error("ModeSpec: mode frequency inconsistent with omega_z");
  }
  bool lamb_dicke_ok() const { return eta <= 0.3; }
};

struct LaserDrive {
  double stark_shift;  // |Omega_L|, rad/s
  double beat_note;    // laser beat note, rad/s
  double phase_l = 0.0;
  double eq_phase = 0.0;  // phi^0_{i1 i2}, fixed 0 throughout
  double gate_time;       // t_g, s
  bool com_closed = true; // t_g chosen so the com trajectory closes

  void validate_com_closure(const ModeSpec& com) const {
    if (!com_closed) return;
    const double k = std::abs(com.delta) * gate_time / (2.0 * pi);
    if (std::abs(k - std::round(k)) > 1e-9 * std::max(1.0, k))
      throw config_error("LaserDrive: t_g does not close the com trajectory");
  }
};

// two-ion normal-mode displacement signs: com (+,+)/sqrt2, breathing (+,-)/sqrt2
inline double mode_sign(int ion, int mode_index) {
  if (mode_index == 1) return 1.0 / std::sqrt(2.0);
  return (ion == 0 ? 1.0 : -1.0) / std::sqrt(2.0);
}

// dimensionless force amplitude entering the phase-space trajectory
inline double force_amplitude(int ion, const ModeSpec& mode, const LaserDrive& drive) {
  return 0.5 * drive.stark_shift * mode.eta * mode_sign(ion, mode.index);
}

inline std::array<ModeSpec, 2> make_modes(double omega_z, double beat_note, double eta_com,
                                          double nbar_com, double nbar_breathing) {
  const double omega_b = breathing_ratio * omega_z;
  // eta_m = sqrt(E_R / omega_m), so the breathing eta follows from the com one
  const double eta_b = eta_com * std::sqrt(omega_z / omega_b);
  ModeSpec com{1, omega_z, omega_z, omega_z - beat_note, eta_com, nbar_com};
  ModeSpec breathing{2, omega_z, omega_b, omega_b - beat_note, eta_b, nbar_breathing};
  return {com, breathing};
}

// ---------------------------------------------------------------------------
// Spin-spin coupling and the force calibration
// ---------------------------------------------------------------------------

// J(t) = -sum_m (2 F1 F2 / delta_m) (t + sin(delta_m t)/delta_m), phi^0 = 0
inline double coupling_strength(const std::array<ModeSpec, 2>& modes, const LaserDrive& drive,
                                double t) {
  double j = 0.0;
  for (const ModeSpec& m : modes) {
    if (m.delta == 0.0) throw config_error("coupling_strength: resonant mode (delta = 0)");
    const double f1 = force_amplitude(0, m, drive);
    const double f2 = force_amplitude(1, m, drive);
    j -= 2.0 * f1 * f2 / m.delta * (t + std::sin(m.delta * t) / m.delta);
  }
  return j;
}

// Rescales |Omega_L| so that J(t_g) = pi/4. J is quadratic in the amplitude,
// so a single positive root exists iff J > 0 at the reference drive; the
// root is located by bisection.
inline LaserDrive calibrate_force(const std::array<ModeSpec, 2>& modes, LaserDrive drive,
                                  double target = pi / 4.0) {
  const double j0 = coupling_strength(modes, drive, drive.gate_time);
  if (!(j0 > 0.0)) throw config_error("calibrate_force: no positive root (J <= 0)");
  auto j_of_scale = [&](double s) {
    LaserDrive d = drive;
    d.stark_shift = s * drive.stark_shift;
    return coupling_strength(modes, d, d.gate_time);
  };
  double lo = 0.0, hi = 1.0;
  while (j_of_scale(hi) < target) hi *= 2.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (j_of_scale(mid) < target ? lo : hi) = mid;
  }
  drive.stark_shift *= 0.5 * (lo + hi);
  return drive;
}

// ---------------------------------------------------------------------------
// Thermal parameter, closed form and quantum-PSD route
// ---------------------------------------------------------------------------

inline double gamma_th_closed(const ModeSpec& breathing, const LaserDrive& drive) {
  if (breathing.delta == 0.0) throw config_error("gamma_th_closed: resonant mode (delta = 0)");
  const double ratio = drive.stark_shift * breathing.eta / breathing.delta;
  return ratio * ratio * (1.0 - std::cos(breathing.delta * drive.gate_time)) *
         (breathing.nbar + 0.5);
}

// one delta peak of the quantum PSD, S(w) = weight * |delta| * delta(w^2 - delta^2)
struct QpsdPeak {
  double delta;   // peak position (detuning)
  double f1;      // force amplitude of ion 1 for this mode
  double nbar;
};

inline std::vector<QpsdPeak> qpsd_peaks(const std::array<ModeSpec, 2>& modes,
                                        const LaserDrive& drive) {
  std::vector<QpsdPeak> peaks;
  for (const ModeSpec& m : modes)
    peaks.push_back({m.delta, force_amplitude(0, m, drive), m.nbar});
  return peaks;
}

// Integrates S_th(w) F(w, t_g) analytically over the delta peaks, using
// delta(w^2 - d^2) = [delta(w - d) + delta(w + d)] / (2|d|). The com peak is
// annihilated by the filter zero at closure; the breathing contribution
// reproduces gamma_th_closed exactly.
inline double gamma_th_from_qpsd(const std::vector<QpsdPeak>& peaks, const LaserDrive& drive) {
  double gamma = 0.0;
  for (const QpsdPeak& p : peaks) {
    if (p.delta == 0.0) throw config_error("gamma_th_from_qpsd: resonant mode (delta = 0)");
    const double weight = 16.0 * pi * p.f1 * p.f1 * (p.nbar + 0.5) * std::abs(p.delta);
    // F is even, so both peaks contribute F(delta)/(2|delta|) each
    gamma += weight * filter_function(p.delta, drive.gate_time) / std::abs(p.delta);
  }
  return gamma;
}

inline double gamma_th_from_qpsd(const std::array<ModeSpec, 2>& modes, const LaserDrive& drive) {
  drive.validate_com_closure(modes[0]);
  return gamma_th_from_qpsd(qpsd_peaks(modes, drive), drive);
}

}  // namespace lsgst

#endif
