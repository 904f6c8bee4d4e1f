#pragma once

#include <string>
#include <vector>

#include "csf/constraint_graph.hpp"
#include "csf/geometry.hpp"
#include "csf/global_floorplan.hpp"
#include "csf/legalize_csaq.hpp"

namespace csf {

// Optimizer pairing: first letter = global floorplanning, second =
// legalization; q = CSAQ (Q-learning scale control), c = plain CSA.
enum class Mode { cc, qc, qq };

enum class LegalizerKind { LaCsaq, LaCg, IlaCgm, IlaCgs };

Mode mode_from_string(const std::string& s);
LegalizerKind legalizer_from_string(const std::string& s);
std::string to_string(Mode m);
std::string to_string(LegalizerKind k);

struct CsfConfig {
  Mode mode = Mode::qq;
  LegalizerKind legalizer = LegalizerKind::LaCsaq;
  int t_max = 10;     // restart budget
  int population = 5; // p (= Q-table states)
  std::uint64_t seed = 1;
  double rotate_prob = 0.3; // per-module flip probability between restarts
  GlobalConfig global;
  LaCsaqConfig la;
  int cg_n_max = 20; // ILA-CG rounds per individual
};

struct RunResult {
  bool legal = false;
  Placement placement;
  double hpwl = 0.0;
  double hpwl_before_compress = 0.0;
  double t_g = 0.0, t_l = 0.0, t_w = 0.0;
  int restarts = 0;
  double residual_fl = 0.0; // best f_l over failed attempts (0 when legal)
};

// Latin hypercube initialization: per module and axis the p samples occupy p
// distinct strata of [0, W*] (resp. [0, H*]); orientations uniform.
std::vector<Placement> lhs_init(const Netlist& netlist, const Outline& outline, int p, Rng& rng);

// Flips each module's orientation independently with probability prob.
void rotate_random(Placement& placement, Rng& rng, double prob);

// Full pipeline: LHS init, then up to t_max rounds of global floorplanning +
// legalization, rotating random modules between failed attempts.
RunResult run_csf(const Netlist& netlist, const Outline& outline, const CsfConfig& cfg);

// Benchmark parameter presets.
enum class BenchFamily { Mcnc, Gsrc };
BenchFamily detect_family(int module_count);

// Fills stage parameters (weights, budgets, action groups, scale factors)
// for the given instance; explicit flags can override individual fields
// afterwards.
CsfConfig make_config(Mode mode, LegalizerKind legalizer, BenchFamily family,
                      const std::string& instance, int module_count, std::uint64_t seed);

} // namespace csf
