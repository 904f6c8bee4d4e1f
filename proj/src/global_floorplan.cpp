#include "csf/global_floorplan.hpp"

#include "csf/internal/pop_bridge.hpp"

namespace csf {

GlobalStats gfloorplan(std::vector<Placement>& population, const Netlist& netlist,
                       const Outline& outline, const GlobalConfig& cfg, std::uint64_t seed) {
  GlobalStats stats;
  Evaluator ev(netlist, outline);
  const double threshold = netlist.total_area / cfg.feasibility_divisor;

  // "Total overlapping area of all individuals" read as the population sum;
  // the per-individual reading exits after a single pass and starves the
  // escalation loop.
  auto near_feasible = [&] {
    double sum = 0.0;
    for (const Placement& p : population) sum += ev.total_overlap(p);
    return sum < threshold;
  };

  double lambda = cfg.weights.lambda;
  stats.lambda_final = lambda;
  while (!near_feasible()) {
    if (stats.passes >= cfg.max_passes) {
      stats.near_feasible = false;
      return stats;
    }
    ObjectiveWeights w = cfg.weights;
    w.lambda = lambda;

    CsaqOptions opt;
    opt.k_max = cfg.k_max;
    opt.k_t = cfg.k_t;
    opt.use_controller = cfg.use_controller;
    opt.actions = cfg.actions;
    opt.fixed_c = cfg.fixed_c;
    opt.qcfg = cfg.qcfg;
    opt.stop_at_zero = false;
    opt.seed = Rng::mix(seed, stats.passes);

    internal::PopBridge bridge(netlist, outline, population);
    CsaqResult res = csaq_run(bridge.fused(w, /*legal_only=*/false),
                              bridge.plain(w, /*legal_only=*/false),
                              bridge.pack_population(), opt);
    // Hand the incumbents (not the last bounce iterates) to the next pass;
    // the fixed-norm steps never settle, so the final iterate of a pass is
    // an arbitrary point of the endgame oscillation.
    bridge.unpack_population(res.best_u, population);

    lambda *= cfg.escalation_q;
    stats.lambda_final = lambda;
    ++stats.passes;
  }
  stats.near_feasible = true;
  return stats;
}

} // namespace csf
