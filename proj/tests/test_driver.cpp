#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "csf/csf_driver.hpp"
#include "csf/objective.hpp"
#include "csf/synth_bench.hpp"
#include "support/oracles.hpp"

using namespace csf;

TEST_CASE("lhs samples hit every stratum once per module and axis") {
  Rng rng(11);
  Netlist nl = oracle::random_netlist(rng, 20, 0, 4);
  Outline o;
  o.width = 10.0;
  o.height = 40.0;
  const int p = 5;
  int violations = 0;
  for (int seed = 0; seed < 100; ++seed) {
    Rng r(seed);
    auto pop = lhs_init(nl, o, p, r);
    for (int m = 0; m < nl.module_count(); ++m) {
      std::vector<int> seen_x(p, 0), seen_y(p, 0);
      for (int i = 0; i < p; ++i) {
        const int sx = std::min<int>(p - 1, static_cast<int>(pop[i].x[m] / (o.width / p)));
        const int sy = std::min<int>(p - 1, static_cast<int>(pop[i].y[m] / (o.height / p)));
        ++seen_x[sx];
        ++seen_y[sy];
      }
      for (int s = 0; s < p; ++s) {
        if (seen_x[s] != 1 || seen_y[s] != 1) ++violations;
      }
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("lhs with a single individual is a plain uniform sample") {
  Rng rng(3);
  Netlist nl = oracle::random_netlist(rng, 50, 0, 4);
  Outline o;
  o.width = 8.0;
  o.height = 8.0;
  auto pop = lhs_init(nl, o, 1, rng);
  REQUIRE(pop.size() == 1);
  for (int m = 0; m < 50; ++m) {
    CHECK(pop[0].x[m] >= 0.0);
    CHECK(pop[0].x[m] <= o.width);
  }
}

TEST_CASE("rotate_random edge probabilities") {
  Placement p = Placement::sized(64);
  Rng rng(5);
  rotate_random(p, rng, 0.0);
  CHECK(std::count(p.rotated.begin(), p.rotated.end(), 1) == 0);
  rotate_random(p, rng, 1.0);
  CHECK(std::count(p.rotated.begin(), p.rotated.end(), 1) == 64);
  rotate_random(p, rng, 1.0);
  CHECK(std::count(p.rotated.begin(), p.rotated.end(), 1) == 0);
}

TEST_CASE("rotate_random flip fraction sits in the binomial band") {
  Placement p = Placement::sized(10000);
  Rng rng(17);
  rotate_random(p, rng, 0.3);
  const double flips = std::count(p.rotated.begin(), p.rotated.end(), 1);
  const double sigma = std::sqrt(10000 * 0.3 * 0.7);
  CHECK(std::fabs(flips - 3000.0) <= 3.0 * sigma);
}

TEST_CASE("gfloorplan escalates lambda geometrically and reaches the threshold") {
  SynthSpec spec;
  spec.modules = 20;
  spec.terminals = 8;
  spec.nets = 30;
  spec.seed = 21;
  Netlist nl = make_synthetic(spec);
  const Outline o = generate_outline(nl.total_area, 1.0, 0.3);

  GlobalConfig cfg;
  cfg.weights = {1.0, 20.0, 10.0};
  cfg.feasibility_divisor = 10.0;
  cfg.k_max = 50;
  cfg.k_t = 10;
  cfg.use_controller = true;
  cfg.actions = {8, 12, 15, 20, 25};

  Rng rng(1);
  auto pop = lhs_init(nl, o, 5, rng);
  GlobalStats st = gfloorplan(pop, nl, o, cfg, 77);
  CHECK(st.near_feasible);

  double expected_lambda = cfg.weights.lambda;
  for (int t = 0; t < st.passes; ++t) expected_lambda *= cfg.escalation_q;
  CHECK(st.lambda_final == expected_lambda);

  const double threshold = nl.total_area / cfg.feasibility_divisor;
  for (const Placement& p : pop) CHECK(total_overlap(p, nl) < threshold);
}

TEST_CASE("gfloorplan returns immediately on an already-feasible population") {
  Netlist nl;
  nl.modules.push_back({0, "a", 2, 2});
  nl.modules.push_back({1, "b", 2, 2});
  Net net;
  net.module_pins = {0, 1};
  nl.nets.push_back(net);
  nl.finalize();
  Outline o;
  o.width = 10;
  o.height = 10;
  Placement p = Placement::sized(2);
  p.x = {1, 5};
  p.y = {1, 1};
  std::vector<Placement> pop = {p, p};
  GlobalConfig cfg;
  GlobalStats st = gfloorplan(pop, nl, o, cfg, 1);
  CHECK(st.near_feasible);
  CHECK(st.passes == 0);
  CHECK(pop[0].x == std::vector<double>{1, 5});
}

TEST_CASE("gfloorplan threshold arithmetic on a fully overlapped toy") {
  // Two 2x2 modules stacked: D = 4, A = 8; with v = 10 the loop may only
  // exit once both individuals have D < 0.8.
  Netlist nl;
  nl.modules.push_back({0, "a", 2, 2});
  nl.modules.push_back({1, "b", 2, 2});
  Net net;
  net.module_pins = {0, 1};
  nl.nets.push_back(net);
  nl.finalize();
  Outline o;
  o.width = 6;
  o.height = 6;
  Placement p = Placement::sized(2);
  p.x = {3, 3};
  p.y = {3, 3};
  std::vector<Placement> pop = {p, p};

  GlobalConfig cfg;
  cfg.feasibility_divisor = 10.0;
  cfg.use_controller = true;
  cfg.actions = {0.5, 1.0, 2.0, 3.0, 4.0};
  cfg.k_max = 60;
  cfg.k_t = 10;
  GlobalStats st = gfloorplan(pop, nl, o, cfg, 9);
  CHECK(st.near_feasible);
  for (const Placement& q : pop) CHECK(total_overlap(q, nl) < 0.8);
}

namespace {

CsfConfig small_config(Mode mode, LegalizerKind leg, std::uint64_t seed) {
  CsfConfig cfg = make_config(mode, leg, BenchFamily::Gsrc, "synth", 24, seed);
  // Trimmed budgets keep the unit suite fast; the acceptance suite runs the
  // full presets.
  cfg.global.k_max = 60;
  cfg.global.k_t = 15;
  cfg.la.k_max = 1500;
  cfg.t_max = 4;
  return cfg;
}

} // namespace

TEST_CASE("run_csf produces a legal floorplan on a synthetic instance") {
  SynthSpec spec;
  spec.modules = 24;
  spec.terminals = 12;
  spec.nets = 40;
  spec.seed = 8;
  Netlist nl = make_synthetic(spec);
  const Outline o = generate_outline(nl.total_area, 1.0, 0.25);

  RunResult r = run_csf(nl, o, small_config(Mode::qq, LegalizerKind::LaCsaq, 7));
  CHECK(r.legal);
  CHECK(is_legal(r.placement, nl, o));
  CHECK(r.hpwl > 0.0);
  CHECK(r.t_w >= r.t_g + r.t_l - 1e-9);
  CHECK(r.residual_fl == 0.0);
}

TEST_CASE("run_csf flags an impossible outline as illegal") {
  SynthSpec spec;
  spec.modules = 10;
  spec.terminals = 4;
  spec.nets = 12;
  spec.seed = 2;
  Netlist nl = make_synthetic(spec);
  Outline o;
  o.width = 1.0; // cannot host any module
  o.height = 1.0;
  CsfConfig cfg = small_config(Mode::qq, LegalizerKind::LaCsaq, 3);
  cfg.t_max = 1;
  cfg.la.k_max = 200;
  RunResult r = run_csf(nl, o, cfg);
  CHECK_FALSE(r.legal);
  CHECK(r.restarts == 1);
  CHECK(r.residual_fl > 0.0);
}

TEST_CASE("run_csf is deterministic apart from timing") {
  SynthSpec spec;
  spec.modules = 16;
  spec.terminals = 8;
  spec.nets = 24;
  spec.seed = 31;
  Netlist nl = make_synthetic(spec);
  const Outline o = generate_outline(nl.total_area, 1.0, 0.3);
  CsfConfig cfg = small_config(Mode::qq, LegalizerKind::LaCsaq, 12345);
  RunResult a = run_csf(nl, o, cfg);
  RunResult b = run_csf(nl, o, cfg);
  CHECK(a.legal == b.legal);
  CHECK(a.hpwl == b.hpwl);
  CHECK(a.placement.x == b.placement.x);
  CHECK(a.placement.y == b.placement.y);
  CHECK(a.placement.rotated == b.placement.rotated);
}

TEST_CASE("cg legalizers also close the loop on an easy instance") {
  SynthSpec spec;
  spec.modules = 14;
  spec.terminals = 8;
  spec.nets = 20;
  spec.seed = 77;
  Netlist nl = make_synthetic(spec);
  const Outline o = generate_outline(nl.total_area, 1.0, 0.6);
  CsfConfig cfg = small_config(Mode::qq, LegalizerKind::IlaCgs, 5);
  RunResult r = run_csf(nl, o, cfg);
  if (r.legal) {
    CHECK(is_legal(r.placement, nl, o));
  } else {
    CHECK(r.residual_fl >= 0.0);
  }
}

TEST_CASE("presets follow the published stage parameters") {
  CsfConfig gsrc = make_config(Mode::qq, LegalizerKind::LaCsaq, BenchFamily::Gsrc, "n100", 100, 1);
  CHECK(gsrc.global.weights.mu == 100.0);
  CHECK(gsrc.global.feasibility_divisor == 100.0);
  CHECK(gsrc.global.k_max == 200);
  CHECK(gsrc.global.k_t == 40);
  CHECK(gsrc.global.actions == std::vector<double>{8, 12, 15, 20, 25});
  CHECK(gsrc.la.k_max == 5000);
  CHECK(gsrc.la.k_t == 100);
  CHECK(gsrc.la.actions == std::vector<double>{0.1, 0.8, 5, 10, 20});
  CHECK(gsrc.la.lambda == 1.0);
  CHECK(gsrc.la.mu == 10.0);

  CsfConfig ami49 = make_config(Mode::qq, LegalizerKind::LaCsaq, BenchFamily::Mcnc, "ami49", 49, 1);
  CHECK(ami49.global.weights.mu == 10.0);
  CHECK(ami49.global.feasibility_divisor == 10.0);
  CHECK(ami49.global.k_max == 50);
  CHECK(ami49.global.k_t == 10);
  CHECK(ami49.global.actions == std::vector<double>{130, 180, 220, 270, 330});
  CHECK(ami49.la.actions == std::vector<double>{10, 50, 100, 150, 200});
  CHECK(ami49.la.k_max == 2000);

  CsfConfig ami33 = make_config(Mode::qq, LegalizerKind::LaCsaq, BenchFamily::Mcnc, "ami33", 33, 1);
  CHECK(ami33.global.actions == std::vector<double>{80, 100, 120, 140, 160});
  CHECK(ami33.la.actions == std::vector<double>{1, 8, 30, 60, 90});

  CsfConfig cc = make_config(Mode::cc, LegalizerKind::LaCsaq, BenchFamily::Gsrc, "n100", 100, 1);
  CHECK_FALSE(cc.global.use_controller);
  CHECK(cc.global.fixed_c == 100.0);
  CHECK(cc.global.k_max == 50);
  CHECK_FALSE(cc.la.use_controller);
  CHECK(cc.la.fixed_c == 50.0);
  CHECK(cc.la.k_max == 2000);

  CHECK(detect_family(49) == BenchFamily::Mcnc);
  CHECK(detect_family(100) == BenchFamily::Gsrc);
}
