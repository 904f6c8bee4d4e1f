#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "csf/constraint_graph.hpp"
#include "csf/objective.hpp"
#include "support/oracles.hpp"

using namespace csf;

namespace {

Netlist boxes(std::initializer_list<std::pair<double, double>> dims) {
  Netlist nl;
  int id = 0;
  for (auto [w, h] : dims) {
    nl.modules.push_back({id, "m" + std::to_string(id), w, h});
    ++id;
  }
  Net net;
  net.module_pins = {0};
  if (id > 1) net.module_pins.push_back(1);
  nl.nets.push_back(net);
  nl.finalize();
  return nl;
}

Placement centers(std::initializer_list<std::pair<double, double>> lls, const Netlist& nl) {
  Placement p = Placement::sized(nl.module_count());
  int i = 0;
  for (auto [lx, ly] : lls) {
    p.x[i] = lx + nl.modules[i].width / 2.0;
    p.y[i] = ly + nl.modules[i].height / 2.0;
    ++i;
  }
  return p;
}

} // namespace

TEST_CASE("build_cg applies the pair rules") {
  SUBCASE("y-projections overlap, x disjoint: HCG only") {
    Netlist nl = boxes({{2, 2}, {2, 2}});
    CgPair cg = build_cg(centers({{0, 0}, {5, 0}}, nl), nl);
    CHECK(cg.hcg.has(0, 1));
    CHECK_FALSE(cg.vcg.has(0, 1));
    CHECK_FALSE(cg.vcg.has(1, 0));
    CHECK(cg.hcg.arc_count() == 1);
  }
  SUBCASE("both projections overlap, x-overlap smaller: HCG") {
    Netlist nl = boxes({{4, 4}, {4, 4}});
    CgPair cg = build_cg(centers({{0, 0}, {2, 1}}, nl), nl);
    CHECK(cg.hcg.has(0, 1));
    CHECK(cg.vcg.arc_count() == 0);
  }
  SUBCASE("fully disjoint pair: arcs in both graphs") {
    Netlist nl = boxes({{1, 1}, {1, 1}});
    CgPair cg = build_cg(centers({{0, 0}, {5, 5}}, nl), nl);
    CHECK(cg.hcg.has(0, 1));
    CHECK(cg.vcg.has(0, 1));
  }
  SUBCASE("x-projections overlap, y disjoint: VCG only") {
    Netlist nl = boxes({{2, 2}, {2, 2}});
    CgPair cg = build_cg(centers({{0, 0}, {1, 6}}, nl), nl);
    CHECK(cg.vcg.has(0, 1));
    CHECK(cg.hcg.arc_count() == 0);
  }
}

TEST_CASE("pack computes longest-path coordinates") {
  Netlist nl = boxes({{2, 5}, {3, 5}, {4, 5}});
  CgPair cg;
  cg.n = 3;
  cg.w = {2, 3, 4};
  cg.h = {5, 5, 5};
  cg.hcg.reset(3);
  cg.vcg.reset(3);
  cg.hcg.add(0, 1);
  cg.hcg.add(1, 2);
  cg.hcg.add(0, 2);
  Placement ref = Placement::sized(3);
  Placement packed = pack(cg, ref);
  CHECK(cg.llx == std::vector<double>{0, 2, 5});
  CHECK(cg.packed_w == 9.0);
  CHECK(packed.x[2] == 7.0); // center of the 4-wide module at ll 5

  SUBCASE("empty graphs violate pair-completeness") {
    CgPair empty;
    empty.n = 3;
    empty.w = {1, 1, 1};
    empty.h = {1, 1, 1};
    empty.hcg.reset(3);
    empty.vcg.reset(3);
    CHECK_THROWS_WITH_AS(pack(empty, ref), doctest::Contains("unordered"), std::runtime_error);
  }
  SUBCASE("cycles are reported with an arc") {
    cg.hcg.add(2, 0);
    CHECK_THROWS_WITH_AS(pack(cg, ref), doctest::Contains("cycle"), std::runtime_error);
  }
}

TEST_CASE("slacks on chains") {
  SUBCASE("single chain filling the span is fully critical") {
    CgPair cg;
    cg.n = 3;
    cg.w = {2, 3, 4};
    cg.h = {1, 1, 1};
    cg.hcg.reset(3);
    cg.vcg.reset(3);
    cg.hcg.add(0, 1);
    cg.hcg.add(1, 2);
    cg.hcg.add(0, 2);
    repack(cg);
    SlackSet s = slacks(cg, 9.0, 100.0);
    CHECK(s.sx == std::vector<double>{0, 0, 0});
  }
  SUBCASE("short parallel chain shares slack 4") {
    CgPair cg;
    cg.n = 5;
    cg.w = {2, 3, 4, 2, 3};
    cg.h = {1, 1, 1, 1, 1};
    cg.hcg.reset(5);
    cg.vcg.reset(5);
    cg.hcg.add(0, 1);
    cg.hcg.add(1, 2);
    cg.hcg.add(0, 2);
    cg.hcg.add(3, 4);
    for (int a : {0, 1, 2}) {
      for (int b : {3, 4}) cg.vcg.add(a, b);
    }
    repack(cg);
    SlackSet s = slacks(cg, 9.0, 100.0);
    CHECK(s.sx[0] == 0.0);
    CHECK(s.sx[1] == 0.0);
    CHECK(s.sx[2] == 0.0);
    CHECK(s.sx[3] == 4.0);
    CHECK(s.sx[4] == 4.0);
  }
}

TEST_CASE("critical relationship weights by direct substitution") {
  CgPair cg;
  cg.n = 2;
  cg.w = {2, 2};
  cg.h = {4, 3};
  cg.llx = {0, 2};
  cg.lly = {0, 5};
  SlackSet s;
  s.sx = {0, 0};
  s.sy = {5, 1};
  // y_A <= y_B: weight = S^y_A - h_B.
  CHECK(critical_weight(cg, s, {0, 1}, true) == 2.0);
  s.sy[0] = 0.0;
  CHECK(critical_weight(cg, s, {0, 1}, true) == -3.0);
  // y_A > y_B: weight = S^y_B - h_A.
  cg.lly = {7, 2};
  cg.h = {4, 3};
  s.sy = {9, 4};
  CHECK(critical_weight(cg, s, {0, 1}, true) == 0.0);
}

TEST_CASE("compressible arcs need a redundant direction") {
  CgPair cg;
  cg.n = 2;
  cg.w = {2, 2};
  cg.h = {2, 2};
  cg.hcg.reset(2);
  cg.vcg.reset(2);
  cg.hcg.add(0, 1);

  SUBCASE("pair ordered only by the candidate arc is kept") {
    repack(cg);
    CHECK(compressible_arcs(cg, true).empty());
  }
  SUBCASE("existing vertical order makes the horizontal arc redundant") {
    cg.vcg.add(0, 1);
    repack(cg);
    const auto comp = compressible_arcs(cg, true);
    REQUIRE(comp.size() == 1);
    CHECK(comp[0].from == 0);
    CHECK(comp[0].to == 1);
  }
}

TEST_CASE("removing a compressible arc never widens the packing") {
  Rng rng(42);
  for (int t = 0; t < 200; ++t) {
    const int n = 3 + static_cast<int>(rng.below(10));
    Netlist nl = oracle::random_netlist(rng, n, 0, 1);
    Placement p = oracle::random_placement(rng, n, 30.0);
    CgPair cg = build_cg(p, nl);
    repack(cg);
    const double w0 = cg.packed_w;
    for (const Arc& arc : compressible_arcs(cg, true)) {
      CgPair mod = cg;
      mod.hcg.remove(arc.from, arc.to);
      repack(mod);
      CHECK(mod.packed_w <= w0 + 1e-12);
      // The pair stays ordered, so packing is still overlap-free.
      Placement q = pack(mod, p);
      CHECK(total_overlap(q, nl) == 0.0);
    }
  }
}

TEST_CASE("build_cg structural audit on random placements") {
  Rng rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + static_cast<int>(rng.below(14));
    Netlist nl = oracle::random_netlist(rng, n, 0, 1);
    Placement p = oracle::random_placement(rng, n, 40.0);
    CgPair cg = build_cg(p, nl);
    // Pair-complete and acyclic (pack throws on either violation).
    Placement packed = pack(cg, p);
    CHECK(total_overlap(packed, nl) == 0.0);
    for (int i = 0; i < n; ++i) {
      CHECK(cg.llx[i] >= 0.0);
      CHECK(cg.lly[i] >= 0.0);
    }
    SlackSet s = slacks(cg, 0.0, 0.0); // span = packed extent
    double mn_x = 1e300, mn_y = 1e300;
    for (int i = 0; i < n; ++i) {
      CHECK(s.sx[i] >= 0.0);
      CHECK(s.sy[i] >= 0.0);
      mn_x = std::min(mn_x, s.sx[i]);
      mn_y = std::min(mn_y, s.sy[i]);
    }
    // Nodes on a maximum-length path are tight.
    CHECK(mn_x == 0.0);
    CHECK(mn_y == 0.0);
  }
}

TEST_CASE("ilg leaves a fitting graph alone") {
  Netlist nl = boxes({{2, 2}, {2, 2}});
  CgPair cg = build_cg(centers({{0, 0}, {3, 0}}, nl), nl);
  repack(cg);
  const int arcs_before = cg.hcg.arc_count() + cg.vcg.arc_count();
  Rng rng(1);
  const double pw[] = {1.0, 0.0, 0.0};
  CHECK(ilg_x(100.0, 100.0, cg, nl, 3, pw, rng) == IlgStatus::Fit);
  CHECK(cg.hcg.arc_count() + cg.vcg.arc_count() == arcs_before);
}

TEST_CASE("a module wider than the outline stalls ilg") {
  Netlist nl = boxes({{10, 2}});
  CgPair cg = build_cg(centers({{0, 0}}, nl), nl);
  repack(cg);
  Rng rng(1);
  const double pw[] = {1.0};
  CHECK(ilg_x(5.0, 5.0, cg, nl, 1, pw, rng) == IlgStatus::Stall);
}

TEST_CASE("ilg_x moves a critical arc into the vertical graph") {
  // Two 4x2 modules side by side in a 6-wide outline: packing is 8 wide, so
  // one relationship must flip to vertical.
  Netlist nl = boxes({{4, 2}, {4, 2}});
  CgPair cg = build_cg(centers({{0, 0}, {4, 0}}, nl), nl);
  repack(cg);
  CHECK(cg.packed_w == 8.0);
  Rng rng(3);
  const double pw[] = {1.0, 0.0, 0.0};
  REQUIRE(ilg_x(6.0, 6.0, cg, nl, 3, pw, rng) == IlgStatus::Fit);
  CHECK(cg.packed_w <= 6.0);
  CHECK(cg.hcg.arc_count() == 0);
  CHECK(cg.vcg.arc_count() == 1);
  CHECK(cg.packed_h == 4.0);
}

TEST_CASE("ila_cg returns an already-legal individual in round one") {
  Netlist nl = boxes({{2, 2}, {2, 2}});
  Outline o;
  o.width = 10;
  o.height = 10;
  std::vector<Placement> pop = {centers({{0, 0}, {4, 0}}, nl)};
  const double pw[] = {1.0, 0.0, 0.0};
  CgLegalizeResult res = ila_cg(pop, nl, o, 20, 3, pw, 7);
  CHECK(res.legal);
  CHECK(res.rounds_used == 1);
  CHECK(is_legal(res.placement, nl, o));
}

TEST_CASE("la_cg equals ila_cg with k = 1") {
  Rng rng(99);
  Netlist nl = oracle::random_netlist(rng, 8, 0, 6);
  Outline o;
  o.width = 20;
  o.height = 20;
  std::vector<Placement> pop1, pop2;
  for (int i = 0; i < 3; ++i) {
    Placement p = oracle::random_placement(rng, 8, 18.0);
    pop1.push_back(p);
    pop2.push_back(p);
  }
  const double unit[] = {1.0};
  CgLegalizeResult a = la_cg(pop1, nl, o, 10, 5);
  CgLegalizeResult b = ila_cg(pop2, nl, o, 10, 1, unit, 5);
  CHECK(a.legal == b.legal);
  if (a.legal) {
    CHECK(a.placement.x == b.placement.x);
    CHECK(a.placement.y == b.placement.y);
  }
}

TEST_CASE("degenerate selection distribution makes ila-cgs seed-independent") {
  Rng rng(5);
  Netlist nl = oracle::random_netlist(rng, 10, 0, 8);
  Outline o;
  o.width = 18;
  o.height = 18;
  const double pw[] = {1.0, 0.0, 0.0};
  std::vector<Placement> base;
  for (int i = 0; i < 2; ++i) base.push_back(oracle::random_placement(rng, 10, 16.0));
  auto run = [&](std::uint64_t seed) {
    std::vector<Placement> pop = base;
    return ila_cg(pop, nl, o, 20, 3, pw, seed);
  };
  CgLegalizeResult a = run(1), b = run(999);
  CHECK(a.legal == b.legal);
  if (a.legal) {
    CHECK(a.placement.x == b.placement.x);
    CHECK(a.placement.y == b.placement.y);
  }
}

TEST_CASE("legal cg results satisfy the exact legality predicate") {
  Rng rng(31337);
  const double pw[] = {0.9, 0.05, 0.05};
  int legal_seen = 0;
  for (int t = 0; t < 20; ++t) {
    const int n = 4 + static_cast<int>(rng.below(8));
    Netlist nl = oracle::random_netlist(rng, n, 0, 6);
    const Outline o = generate_outline(nl.total_area, 1.0, 0.3);
    std::vector<Placement> pop;
    for (int i = 0; i < 2; ++i) pop.push_back(oracle::random_placement(rng, n, o.width));
    CgLegalizeResult res = ila_cg(pop, nl, o, 20, 3, pw, t);
    if (res.legal) {
      ++legal_seen;
      CHECK(is_legal(res.placement, nl, o));
      CHECK(boundary_violation(res.placement, nl, o) == 0.0);
    }
  }
  CHECK(legal_seen > 0);
}
