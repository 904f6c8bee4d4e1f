#pragma once

#include <vector>

#include "csf/csa.hpp"
#include "csf/geometry.hpp"
#include "csf/objective.hpp"

namespace csf {

struct GlobalConfig {
  ObjectiveWeights weights{1.0, 20.0, 10.0}; // alpha, lambda0, mu
  double escalation_q = 1.3;
  double feasibility_divisor = 10.0; // v: exit when every D < A/v
  int k_max = 50;
  int k_t = 10;
  std::vector<double> actions;
  double fixed_c = 1000.0;
  bool use_controller = true;
  QControllerConfig qcfg;
  int max_passes = 30; // divergence guard; the paper sets no cap
};

struct GlobalStats {
  bool near_feasible = false;
  int passes = 0;
  double lambda_final = 0.0;
};

// Repeated CSAQ passes on f_g with geometric overlap-weight escalation, until
// every individual's raw overlap drops below total_area / v.
GlobalStats gfloorplan(std::vector<Placement>& population, const Netlist& netlist,
                       const Outline& outline, const GlobalConfig& cfg, std::uint64_t seed);

} // namespace csf
