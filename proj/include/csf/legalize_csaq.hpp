#pragma once

#include <vector>

#include "csf/csa.hpp"
#include "csf/geometry.hpp"
#include "csf/objective.hpp"

namespace csf {

struct LaCsaqConfig {
  double lambda = 1.0;
  double mu = 10.0;
  int k_max = 5000;
  int k_t = 100;
  std::vector<double> actions;
  double fixed_c = 50.0;
  bool use_controller = true;
  QControllerConfig qcfg;
};

struct CompressResult {
  Placement placement;
  bool applied = false;
};

// One constraint-graph compaction pass over a legal placement (lower-left
// anchored at the outline origin). Returns the input unchanged when the
// packed extents would violate the outline.
CompressResult compress(const Placement& placement, const Netlist& netlist, const Outline& outline);

struct LaCsaqResult {
  bool legal = false;
  Placement placement; // compressed legal placement when legal
  int individual = -1;
  int iterations = 0;
  double min_fl = 0.0; // diagnostic: lowest f_l reached on failure
  bool compressed = false;
  double hpwl_before_compress = 0.0;
};

// CSAQ minimization of f_l = lambda*D + mu*B, stopping at the first
// individual with exactly f_l = 0, then compacting it with one CG pass.
// The population is left at its final iterates either way.
LaCsaqResult la_csaq(std::vector<Placement>& population, const Netlist& netlist,
                     const Outline& outline, const LaCsaqConfig& cfg, std::uint64_t seed);

} // namespace csf
