#include <catch2/catch_amalgamated.hpp>

#include "lsgst/circuit.hpp"
#include "lsgst/design.hpp"
#include "lsgst/fisher.hpp"
#include "lsgst/physical.hpp"
#include "lsgst/probability.hpp"
#include "test_support.hpp"

using namespace lsgst;

namespace {

GateSet noisy_gateset(const ModelContext& ctx) {
  PhysicalConfig cfg;
  auto m = derive_model(cfg);
  ThetaVector t = physical_theta(m, ThetaLayout{}, SpamModel{0.01, 0.02, 0.015},
                                 SingleQubitNoise{2e-3, 1.5e-3, 0.0});
  (void)ctx;
  return build_gateset(t, m.context());
}

}  // namespace

TEST_CASE("circuit grammar", "[circuits]") {
  Circuit c = parse_circuit("I | LS^4 | YP2:0 YP2:1");
  CHECK(c.prep.empty());
  CHECK(c.germ == std::vector<std::string>{"LS"});
  CHECK(c.power == 4);
  CHECK(c.meas == (std::vector<std::string>{"YP2:0", "YP2:1"}));

  // whitespace-insensitive
  CHECK(parse_circuit("I|LS^4|YP2:0 YP2:1") == c);
  CHECK(parse_circuit("  I |  LS ^ 4 |YP2:0   YP2:1 ") == c);

  // round trip through the canonical form
  const std::vector<std::string> corpus = {
      "I | LS^0 | I",
      "XP2:0 | LS^1 | XM2:0",
      "YP2:0 YP2:1 | LS^16 | YM2:0 YM2:1",
      "XPI:0 XPI:1 | XP2:0^3 | I",
      "I | XP2:0 XP2:1^2 | YM2:1",
  };
  for (const auto& s : corpus) {
    Circuit parsed = parse_circuit(s);
    CHECK(serialize_circuit(parsed) == s);
    CHECK(parse_circuit(serialize_circuit(parsed)) == parsed);
  }
}

TEST_CASE("circuit parse errors carry byte offsets", "[circuits]") {
  CHECK_THROWS_AS(parse_circuit("I | LS^-1 | I"), parse_error);
  CHECK_THROWS_AS(parse_circuit("I | LS^x | I"), parse_error);
  CHECK_THROWS_AS(parse_circuit("I | LS | I"), parse_error);       // missing power
  CHECK_THROWS_AS(parse_circuit("I | BAD^1 | I"), parse_error);    // unknown token
  CHECK_THROWS_AS(parse_circuit("XP2:2 | LS^1 | I"), parse_error); // bad qubit
  CHECK_THROWS_AS(parse_circuit("I | LS^1 | I garbage |"), parse_error);
  CHECK_THROWS_AS(parse_circuit("I | LS^1"), parse_error);         // missing meas
  try {
    parse_circuit("I | ZZZ:0^1 | I");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.offset == 4);
  }
}

TEST_CASE("circuit probabilities", "[circuits]") {
  PhysicalConfig cfg;
  auto m = derive_model(cfg);
  const ModelContext ctx = m.context();

  SECTION("ideal Bell circuit gives two outcomes at 1/2") {
    ThetaVector ideal{ThetaLayout{}};
    GateSet gs = build_gateset(ideal, ctx);
    Circuit c = parse_circuit("YP2:0 YP2:1 | LS^1 | YP2:0 YP2:1");
    RVec p = circuit_probabilities(c, gs, SequenceMode::context_independent);
    // the Bell state measured in this basis populates two outcomes equally
    std::vector<double> sorted{p(0), p(1), p(2), p(3)};
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted[0] < 1e-10);
    CHECK(sorted[1] < 1e-10);
    CHECK(sorted[2] == Catch::Approx(0.5));
    CHECK(sorted[3] == Catch::Approx(0.5));
  }

  SECTION("p = 0 germ reduces to the SPAM circuit") {
    GateSet gs = noisy_gateset(ctx);
    Circuit c0 = parse_circuit("I | LS^0 | I");
    RVec p = circuit_probabilities(c0, gs, SequenceMode::context_dependent);
    const double e0 = gs.spam.eps_m0, e1 = gs.spam.eps_m1, er = gs.spam.eps_rho;
    const double p00 = (1 - er) * (1 - e0) * (1 - e1) +
                       er * 0.25;  // uniform part has symmetric confusion
    CHECK(p(0) == Catch::Approx(p00).epsilon(1e-12));
    CHECK(p.sum() == Catch::Approx(1.0));
  }

  SECTION("context modes differ where A(p,x) deviates from p") {
    PhysicalConfig c2;
    c2.omega_z = 2.0 * pi * 1.0e6;
    auto m2 = derive_model(c2);
    ThetaVector t = physical_theta(m2, ThetaLayout{}, SpamModel{}, SingleQubitNoise{});
    t[0] = 5e-3;  // visible thermal parameter
    GateSet gs = build_gateset(t, m2.context());
    Circuit c = parse_circuit("YP2:0 YP2:1 | LS^8 | YM2:0 YM2:1");
    RVec pd = circuit_probabilities(c, gs, SequenceMode::context_dependent);
    RVec pi_ = circuit_probabilities(c, gs, SequenceMode::context_independent);
    const double a = amplification_factor(8, m2.ls.x);
    CHECK(std::abs(a - 8.0) > 1.0);  // amplification indeed deviates at this x
    CHECK((pd - pi_).cwiseAbs().maxCoeff() > 1e-4);
  }

  SECTION("context-independent probabilities equal literal p-fold composition") {
    GateSet gs = noisy_gateset(ctx);
    Circuit c = parse_circuit("YP2:0 YP2:1 | LS^6 | YM2:0 YM2:1");
    RVec fast = circuit_probabilities(c, gs, SequenceMode::context_independent);
    // literal composition
    Vec v = vec(gs.rho0);
    for (const auto& label : c.prep) v = gs.find(label).channel.m * v;
    for (int r = 0; r < 6; ++r) v = gs.find("LS").channel.m * v;
    for (const auto& label : c.meas) v = gs.find(label).channel.m * v;
    for (int mu = 0; mu < 4; ++mu) {
      double acc = 0;
      for (int k = 0; k < 4; ++k)
        acc += gs.povm.effects[static_cast<std::size_t>(mu)](k, k).real() * v(k * 4 + k).real();
      CHECK(std::abs(acc - fast(mu)) < tol_exact);
    }
  }

  SECTION("LS outside a pure germ is rejected in context-dependent mode") {
    GateSet gs = noisy_gateset(ctx);
    Circuit bad1 = parse_circuit("I | LS XP2:0^2 | I");
    CHECK_THROWS_AS(circuit_probabilities(bad1, gs, SequenceMode::context_dependent),
                    design_error);
    CHECK_NOTHROW(circuit_probabilities(bad1, gs, SequenceMode::context_independent));
  }

  SECTION("distributions sum to one at random valid parameters") {
    PhysicalConfig c3;
    auto m3 = derive_model(c3);
    for (int rep = 0; rep < 3; ++rep) {
      ThetaVector t{ThetaLayout{}};
      for (int i = 0; i < t.size(); ++i) t[i] = test::uniform(0.0, 5e-3);
      GateSet gs = build_gateset(t, m3.context());
      for (const Circuit& c : design_last_depth(3).circuits) {
        RVec p = circuit_probabilities(c, gs, SequenceMode::context_dependent);
        CHECK(std::abs(p.sum() - 1.0) < 1e-10);
        CHECK(p.minCoeff() >= 0.0);
      }
    }
  }
}

TEST_CASE("experimental designs", "[circuits]") {
  SECTION("log-spaced count matches 12 log2(p_max)") {
    CHECK(design_log_spaced(16).circuits.size() == 48);
    CHECK(design_log_spaced(2).circuits.size() == 12);
    CHECK(design_log_spaced(1).circuits.size() == 12);
    CHECK_THROWS_AS(design_log_spaced(12), design_error);  // not a power of two
  }
  SECTION("last-depth keeps twelve circuits") {
    CHECK(design_last_depth(16).circuits.size() == 12);
    for (const Circuit& c : design_last_depth(16).circuits) CHECK(c.power == 16);
  }
  SECTION("ramsey design structure") {
    Design d = design_ramsey_fi(5);
    REQUIRE(d.circuits.size() == 1);
    CHECK(serialize_circuit(d.circuits[0]) == "YP2:0 YP2:1 | LS^5 | YM2:0 YM2:1");
  }
  SECTION("design JSON round trip") {
    Design d = design_log_spaced(8, 5000);
    auto j = design_to_json(d);
    Design back = design_from_json(j);
    CHECK(back.n_samples == 5000);
    CHECK(back.scheme == DesignScheme::log_spaced);
    REQUIRE(back.circuits.size() == d.circuits.size());
    for (std::size_t k = 0; k < d.circuits.size(); ++k) CHECK(back.circuits[k] == d.circuits[k]);
  }
  SECTION("duplicate circuits are rejected") {
    Design d;
    d.circuits.push_back(parse_circuit("I | LS^1 | I"));
    d.circuits.push_back(parse_circuit("I|LS^1|I"));
    CHECK_THROWS_AS(d.validate(), design_error);
  }
}

TEST_CASE("default12 Fisher information has full rank at nominal theta", "[circuits]") {
  PhysicalConfig cfg;
  auto m = derive_model(cfg);
  ThetaVector t = physical_theta(m, ThetaLayout{}, SpamModel{0.01, 0.02, 0.015},
                                 SingleQubitNoise{2e-3, 1.5e-3, 0.0});
  for (int p : {1, 2, 4, 16}) {
    Design d = design_last_depth(p);
    CHECK_NOTHROW(
        validate_design(d, t, m.context(), SequenceMode::context_independent));
  }
  CHECK_NOTHROW(validate_design(design_default12(), t, m.context(),
                                SequenceMode::context_dependent));

  // the optional dgamma block is not identified by 12 circuits: the
  // validation reports the offending directions
  ThetaLayout full;
  full.with_dgamma = true;
  ThetaVector tf = physical_theta(m, full, SpamModel{0.01, 0.02, 0.015},
                                  SingleQubitNoise{2e-3, 1.5e-3, 1e-3});
  CHECK_THROWS_AS(validate_design(design_default12(), tf, m.context(),
                                  SequenceMode::context_independent),
                  design_error);
}
