#include <catch2/catch_amalgamated.hpp>

#include "lsgst/gate_set.hpp"
#include "lsgst/metrics.hpp"
#include "lsgst/pauli.hpp"
#include "lsgst/physical.hpp"
#include "lsgst/probability.hpp"
#include "lsgst/design.hpp"
#include "test_support.hpp"

using namespace lsgst;

namespace {

ThetaVector small_noise_theta(ThetaLayout lo = {}) {
  PhysicalConfig cfg;
  auto m = derive_model(cfg);
  return physical_theta(m, lo, SpamModel{0.01, 0.02, 0.015},
                        SingleQubitNoise{2e-3, 1.5e-3, 0.0});
}

ModelContext standard_context() { return derive_model(PhysicalConfig{}).context(); }

}  // namespace

TEST_CASE("ideal single-qubit gates", "[gateset]") {
  // (pi, 0) is X up to a global phase
  Mat xpi = ideal_single_qubit({pi, 0.0, 0});
  Mat ratio = xpi * pauli_x().adjoint();
  CHECK(std::abs(std::abs(ratio(0, 0)) - 1.0) < tol_exact);
  CHECK((ratio - ratio(0, 0) * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < tol_exact);

  // rotation additivity: (pi/2,0)^2 = (pi,0)
  Mat half = ideal_single_qubit({pi / 2, 0.0, 0});
  CHECK((half * half - xpi).cwiseAbs().maxCoeff() < tol_exact);

  // (pi/2, pi) inverts (pi/2, 0)
  Mat inv = ideal_single_qubit({pi / 2, pi, 0});
  CHECK((inv * half - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < tol_exact);

  // YP2 takes |0> to |+>
  Mat yp2 = ideal_single_qubit({pi / 2, 1.5 * pi, 0});
  Vec v = yp2.col(0);
  CHECK(std::abs(v(0) - 1 / std::sqrt(2.0)) < tol_exact);
  CHECK(std::abs(v(1) - 1 / std::sqrt(2.0)) < tol_exact);
}

TEST_CASE("noisy single-qubit channel", "[gateset]") {
  SingleQubitGateSpec xp2{pi / 2, 0.0, 0};

  SECTION("zero noise reduces to the unitary superoperator") {
    SuperOp s = noisy_single_qubit_local(xp2, {});
    CHECK((s.m - unitary_superop(ideal_single_qubit(xp2)).m).cwiseAbs().maxCoeff() < tol_exact);
  }

  SECTION("strong axis dephasing keeps X populations, kills Y/Z coherences") {
    SingleQubitNoise n;
    n.gamma1 = 60.0;
    SuperOp s = noisy_single_qubit_local(xp2, n);
    // six cardinal states
    const Mat states[6] = {
        (Mat(2, 2) << 1, 0, 0, 0).finished(),
        (Mat(2, 2) << 0, 0, 0, 1).finished(),
        (Mat(2, 2) << 0.5, 0.5, 0.5, 0.5).finished(),
        (Mat(2, 2) << 0.5, -0.5, -0.5, 0.5).finished(),
        (Mat(2, 2) << 0.5, -0.5 * ii, 0.5 * ii, 0.5).finished(),
        (Mat(2, 2) << 0.5, 0.5 * ii, -0.5 * ii, 0.5).finished(),
    };
    for (const Mat& rho : states) {
      Mat out = s.apply(rho);
      // Bloch components after the channel
      const double bx = (out * pauli_x()).trace().real();
      const double by = (out * pauli_y()).trace().real();
      const double bz = (out * pauli_z()).trace().real();
      const double bx_in_rotated = (unitary_superop(ideal_single_qubit(xp2)).apply(rho) *
                                    pauli_x()).trace().real();
      CHECK(std::abs(bx - bx_in_rotated) < 1e-12);  // X component preserved
      CHECK(std::abs(by) < 1e-12);
      CHECK(std::abs(bz) < 1e-12);
    }
  }

  SECTION("trace preservation for random noise values") {
    for (int rep = 0; rep < 5; ++rep) {
      SingleQubitNoise n{test::uniform(0, 0.2), test::uniform(-0.1, 0.1),
                         test::uniform(0, 0.2)};
      CHECK(is_trace_preserving(noisy_single_qubit_local(xp2, n)));
      CHECK(is_trace_preserving(noisy_single_qubit(xp2, n)));
    }
  }

  SECTION("germ repetition amplifies gamma1 linearly") {
    SingleQubitNoise n;
    n.gamma1 = 3e-3;
    SuperOp s = noisy_single_qubit_local(xp2, n);
    // each application damps the transverse (Y,Z) Bloch block by exp(-gamma1)
    // and rotates it; the block's singular value isolates the pure decay
    std::vector<double> logs;
    Mat acc = Mat::Identity(4, 4);
    for (int p = 1; p <= 32; ++p) {
      acc = s.m * acc;
      Mat ptm = superop_to_ptm(SuperOp(acc));
      Eigen::JacobiSVD<Mat> svd(ptm.block(2, 2, 2, 2));
      logs.push_back(std::log(svd.singularValues()(0)));
    }
    // regression slope and linearity of log-decay
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n_pts = static_cast<int>(logs.size());
    for (int k = 0; k < n_pts; ++k) {
      sx += k + 1;
      sy += logs[static_cast<std::size_t>(k)];
      sxx += (k + 1) * (k + 1);
      sxy += (k + 1) * logs[static_cast<std::size_t>(k)];
    }
    const double slope = (n_pts * sxy - sx * sy) / (n_pts * sxx - sx * sx);
    CHECK(slope == Catch::Approx(-n.gamma1).epsilon(1e-6));
    for (int k = 0; k < n_pts; ++k) {
      const double fit = logs[0] + slope * k;
      CHECK(std::abs(logs[static_cast<std::size_t>(k)] - fit) < 1e-9);
    }
  }
}

TEST_CASE("SPAM model", "[gateset]") {
  SpamModel s{0.06, 0.01, 0.02};
  Mat rho = spam_rho0(s);
  CHECK_NOTHROW(validate_density_matrix(rho));
  CHECK(rho(0, 0).real() == Catch::Approx(1.0 - 0.06 + 0.06 / 4));
  Povm m = spam_povm(s);
  CHECK_NOTHROW(m.validate());

  // maximal confusion gives the uniform distribution on every state
  Povm uniform_povm = spam_povm(SpamModel{0.0, 0.5, 0.5});
  for (int rep = 0; rep < 5; ++rep) {
    RVec p = probabilities(uniform_povm, test::random_density(4));
    for (int k = 0; k < 4; ++k) CHECK(p(k) == Catch::Approx(0.25));
  }

  CHECK_THROWS_AS((SpamModel{-0.1, 0, 0}.validate()), config_error);
  CHECK_THROWS_AS((SpamModel{0, 0.7, 0}.validate()), config_error);
}

TEST_CASE("gate set assembly", "[gateset]") {
  const ModelContext ctx = standard_context();

  SECTION("all-zero noise gives a unitary gate set") {
    ThetaVector t{ThetaLayout{}};
    t[0] = 0.0;  // thermal and dephasing already zero
    GateSet gs = build_gateset(t, ctx);
    CHECK(gs.gates.size() == 11);
    for (const auto& e : gs.gates) {
      CHECK(is_trace_preserving(e.channel, 1e-9));
      // unitary channels preserve purity
      Mat rho = Mat::Zero(4, 4);
      rho(0, 0) = 1.0;
      Mat out = e.channel.apply(rho);
      CHECK(std::abs((out * out).trace().real() - 1.0) < 1e-9);
    }
  }

  SECTION("every gate trace preserving and CP at nonnegative noise") {
    GateSet gs = build_gateset(small_noise_theta(), ctx);
    for (const auto& e : gs.gates) {
      CHECK(is_trace_preserving(e.channel, 1e-9));
      CHECK(min_eigenvalue(choi_matrix(e.channel)) > -1e-10);
    }
  }

  SECTION("theta round trip") {
    ThetaVector t = small_noise_theta();
    for (int i = 0; i < t.size(); ++i) t[i] += 1e-4 * (i + 1);  // make all entries distinct
    const int so = t.layout.spam_offset();
    t[so] = std::min(t[so], 0.9);
    GateSet gs = build_gateset(t, ctx);
    ThetaVector back = theta_of(gs);
    CHECK((back.values - t.values).cwiseAbs().maxCoeff() < tol_exact);
  }

  SECTION("theta layouts respect the 24..36 parameter budget") {
    CHECK(ThetaLayout{}.size() == 25);
    ThetaLayout full;
    full.with_dgamma = true;
    CHECK(full.size() == 35);
    full.with_theta_ls = true;
    full.with_omega0 = true;
    CHECK_THROWS_AS(full.validate(), config_error);  // 37 > 36
  }

  SECTION("theta JSON round trip is ordered and lossless") {
    ThetaVector t = small_noise_theta();
    auto j = theta_to_json(t);
    CHECK(j.at("schema") == theta_schema);
    ThetaVector back = theta_from_json(j);
    CHECK(back.layout == t.layout);
    CHECK((back.values - t.values).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("parameter map is injective on the default design", "[gateset]") {
  const ModelContext ctx = standard_context();
  ThetaVector t = small_noise_theta();
  Design d = design_default12();

  GateSet gs = build_gateset(t, ctx);
  std::vector<RVec> base;
  for (const Circuit& c : d.circuits)
    base.push_back(circuit_probabilities(c, gs, SequenceMode::context_independent));

  for (int i = 0; i < t.size(); ++i) {
    ThetaVector tp = t;
    tp[i] += 1e-3;
    GateSet gp = build_gateset(tp, ctx);
    double max_change = 0.0;
    for (std::size_t k = 0; k < d.circuits.size(); ++k) {
      RVec p = circuit_probabilities(d.circuits[k], gp, SequenceMode::context_independent);
      max_change = std::max(max_change, (p - base[k]).cwiseAbs().maxCoeff());
    }
    INFO("parameter " << t.layout.names()[static_cast<std::size_t>(i)]);
    CHECK(max_change > 1e-9);
  }
}
