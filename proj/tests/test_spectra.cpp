#include <catch2/catch_amalgamated.hpp>

#include "lsgst/physical.hpp"
#include "lsgst/spectra.hpp"
#include "test_support.hpp"

using namespace lsgst;

namespace {

PhysicalConfig standard_config() {
  PhysicalConfig cfg;
  cfg.omega_z = 2.0 * pi * 1.0e6;
  cfg.gate_time = 97.0e-6;
  cfg.nbar_b = 5.0;
  cfg.ou = {2.0e9, 5.0e-4};
  return cfg;
}

}  // namespace

TEST_CASE("OU spectral density values", "[spectra]") {
  OuProcess p{2.0e9, 5.0e-4};
  CHECK(ou_psd(0.0, p) == Catch::Approx(p.c * p.tau_c * p.tau_c));
  CHECK(ou_psd(1.0 / p.tau_c, p) == Catch::Approx(0.5 * p.c * p.tau_c * p.tau_c));
  CHECK(ou_psd(0.0, p) == Catch::Approx(500.0));
  // even in omega
  for (int k = 0; k < 10; ++k) {
    const double w = test::uniform(0.0, 1e6);
    CHECK(ou_psd(w, p) == Catch::Approx(ou_psd(-w, p)));
  }
}

TEST_CASE("filter function limits and positivity", "[spectra]") {
  const double t = 9.7e-5;
  CHECK(filter_function(0.0, t) == Catch::Approx(t * t / (4.0 * pi)));
  CHECK(filter_function(1e-12, t) == Catch::Approx(t * t / (4.0 * pi)));
  CHECK(filter_function(2.0 * pi / t, t) == Catch::Approx(0.0).margin(1e-18));
  for (int k = 0; k < 50; ++k) CHECK(filter_function(test::uniform(-1e7, 1e7), t) >= 0.0);
}

TEST_CASE("Gamma_d closed form", "[spectra]") {
  OuProcess p{2.0e9, 5.0e-4};
  CHECK(gamma_d_closed(p, 0.0) == 0.0);
  // linear regime at t >> tau_c; the defect is tau_c/t = 1% exactly
  const double t_long = 100.0 * p.tau_c;
  const double linear = 0.5 * p.c * p.tau_c * p.tau_c * t_long;
  CHECK(std::abs(gamma_d_closed(p, t_long) - linear) / linear <= 0.01 + 1e-12);
  CHECK(gamma_d_closed(p, 9.7e-5) == Catch::Approx(2.21e-3).epsilon(5e-3));
}

TEST_CASE("Gamma_d closed form matches the filter-integral quadrature", "[spectra]") {
  OuProcess base{2.0e9, 5.0e-4};
  CHECK(std::abs(gamma_d_quadrature(base, 9.7e-5) - gamma_d_closed(base, 9.7e-5)) /
            gamma_d_closed(base, 9.7e-5) <
        1e-6);
  for (int k = 0; k < 20; ++k) {
    OuProcess p{test::uniform(1e6, 1e10), test::uniform(5e-5, 5e-3)};
    const double t = test::uniform(1e-5, 5e-4);
    const double closed = gamma_d_closed(p, t);
    const double quad = gamma_d_quadrature(p, t);
    CHECK(std::abs(quad - closed) / closed < 1e-6);
  }
}

// Gamma_d grows quadratically at short times and linearly once t >> tau_c:
// monotone, with nonnegative second differences decaying toward zero.
TEST_CASE("Gamma_d is nondecreasing and convex-to-linear in t", "[spectra]") {
  OuProcess p{2.0e9, 5.0e-4};
  double prev = 0.0;
  std::vector<double> vals;
  for (int k = 0; k <= 50; ++k) {
    const double t = k * 1.0e-4;  // out to t = 10 tau_c
    const double g = gamma_d_closed(p, t);
    CHECK(g >= prev - 1e-15);
    prev = g;
    vals.push_back(g);
  }
  std::vector<double> second;
  for (std::size_t k = 1; k + 1 < vals.size(); ++k)
    second.push_back(vals[k + 1] - 2.0 * vals[k] + vals[k - 1]);
  for (double s : second) CHECK(s >= -1e-12);
  // curvature dies off in the linear regime
  CHECK(second.back() < 1e-3 * second.front());
}

TEST_CASE("mode construction enforces the sqrt(3) breathing frequency", "[spectra]") {
  auto modes = make_modes(2.0 * pi * 1e6, 2.0 * pi * 1.05e6, 0.1, 0.0, 5.0);
  CHECK(modes[1].omega == Catch::Approx(std::sqrt(3.0) * modes[0].omega_z));
  CHECK_NOTHROW(modes[0].validate());
  CHECK_NOTHROW(modes[1].validate());
  CHECK(modes[0].lamb_dicke_ok());
  ModeSpec bad = modes[1];
  bad.omega = 2.0 * modes[0].omega_z;
  CHECK_THROWS_AS(bad.validate(), config_error);
}

TEST_CASE("thermal parameter closed form", "[spectra]") {
  auto m = derive_model(standard_config());

  // closed trajectory of the breathing mode gives zero
  LaserDrive closed = m.drive;
  closed.com_closed = false;
  closed.gate_time = 2.0 * pi / m.breathing().delta;
  CHECK(gamma_th_closed(m.breathing(), closed) == Catch::Approx(0.0).margin(1e-20));

  // (nbar + 1/2) scaling: 5.5 / 0.5 = 11
  ModeSpec b0 = m.breathing();
  b0.nbar = 0.0;
  ModeSpec b5 = m.breathing();
  b5.nbar = 5.0;
  CHECK(gamma_th_closed(b5, m.drive) / gamma_th_closed(b0, m.drive) == Catch::Approx(11.0));

  ModeSpec resonant = m.breathing();
  resonant.delta = 0.0;
  CHECK_THROWS_AS(gamma_th_closed(resonant, m.drive), config_error);
}

TEST_CASE("quantum-PSD route equals the closed form exactly", "[spectra]") {
  auto m = derive_model(standard_config());
  const double closed = gamma_th_closed(m.breathing(), m.drive);
  const double qpsd = gamma_th_from_qpsd(m.modes, m.drive);
  CHECK(std::abs(qpsd - closed) <= 1e-12 * std::max(1.0, std::abs(closed)));

  // com-only configuration: zero out the breathing force
  auto peaks = qpsd_peaks(m.modes, m.drive);
  peaks[1].f1 = 0.0;
  CHECK(gamma_th_from_qpsd(peaks, m.drive) == Catch::Approx(0.0).margin(1e-18));

  // doubling the Stark shift quadruples Gamma_th
  LaserDrive doubled = m.drive;
  doubled.stark_shift *= 2.0;
  CHECK(gamma_th_from_qpsd(m.modes, doubled) == Catch::Approx(4.0 * qpsd));
}

TEST_CASE("coupling strength and the com-mode closure", "[spectra]") {
  auto m = derive_model(standard_config());
  CHECK(coupling_strength(m.modes, m.drive, 0.0) == Catch::Approx(0.0).margin(1e-18));

  // at t_g the com sine term vanishes: dropping it changes nothing
  const double tg = m.drive.gate_time;
  double j_manual = 0.0;
  for (const ModeSpec& mode : m.modes) {
    const double f1 = force_amplitude(0, mode, m.drive);
    const double f2 = force_amplitude(1, mode, m.drive);
    const double sine = (mode.index == 1) ? 0.0 : std::sin(mode.delta * tg) / mode.delta;
    j_manual -= 2.0 * f1 * f2 / mode.delta * (tg + sine);
  }
  CHECK(coupling_strength(m.modes, m.drive, tg) == Catch::Approx(j_manual).epsilon(1e-9));
}

TEST_CASE("force calibration reaches J(t_g) = pi/4", "[spectra]") {
  auto cfg = standard_config();
  auto m = derive_model(cfg);
  CHECK(std::abs(coupling_strength(m.modes, m.drive, m.drive.gate_time) - pi / 4.0) < 1e-10);

  // an already calibrated drive is unchanged
  LaserDrive again = calibrate_force(m.modes, m.drive);
  CHECK(again.stark_shift == Catch::Approx(m.drive.stark_shift).epsilon(1e-9));

  // halving t_g requires a rescaled amplitude but the same condition holds
  PhysicalConfig half = cfg;
  half.gate_time = cfg.gate_time / 2.0;
  auto mh = derive_model(half);
  CHECK(std::abs(coupling_strength(mh.modes, mh.drive, mh.drive.gate_time) - pi / 4.0) < 1e-10);
  CHECK(mh.drive.stark_shift != Catch::Approx(m.drive.stark_shift));

  // Gamma_th recomputed after calibration stays finite and positive
  CHECK(gamma_th_closed(mh.breathing(), mh.drive) > 0.0);
  CHECK(std::isfinite(gamma_th_closed(mh.breathing(), mh.drive)));

  // beat note below the com mode makes J negative: no positive root
  const double below = cfg.omega_z - 2.0 * pi / cfg.gate_time;
  auto modes_neg = make_modes(cfg.omega_z, below, cfg.eta_com, 0.0, 5.0);
  CHECK_THROWS_AS(
      calibrate_force(modes_neg, LaserDrive{1e5, below, 0, 0, cfg.gate_time, false}),
      config_error);
}
