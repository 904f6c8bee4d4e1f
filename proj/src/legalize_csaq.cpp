#include "csf/legalize_csaq.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "csf/constraint_graph.hpp"
#include "csf/internal/pop_bridge.hpp"

namespace csf {

CompressResult compress(const Placement& placement, const Netlist& netlist, const Outline& outline) {
  CgPair cg = build_cg(placement, netlist);
  Placement packed = pack(cg, placement);
  if (cg.packed_w <= outline.width && cg.packed_h <= outline.height) {
    return {std::move(packed), true};
  }
  return {placement, false};
}

namespace {

// Converts a near-feasible layout into an exactly legal one when possible:
// constraint-graph pack, redundant-arc compaction, and at most a handful of
// critical-relationship moves. Far cheaper than a CG legalization run and
// only ever applied to states whose violations are already slivers.
std::optional<Placement> try_snap(const Placement& cand, const Netlist& netlist,
                                  const Outline& outline) {
  CgPair cg = build_cg(cand, netlist);
  Placement packed = pack(cg, cand);
  compact(cg, outline.width, outline.height);
  const bool w_over = cg.packed_w > outline.width;
  const bool h_over = cg.packed_h > outline.height;
  if (w_over != h_over) {
    // A single axis sticking out can borrow slack from the other one; when
    // both overflow the layout is fragmented and reshuffling cannot help.
    const double pw[] = {1.0, 0.0, 0.0};
    Rng rng(0x5a9);
    if (w_over) {
      ilg_x(outline.width, outline.height, cg, netlist, 3, pw, rng, 8);
    } else {
      ilg_y(outline.width, outline.height, cg, netlist, 3, pw, rng, 8);
    }
    compact(cg, outline.width, outline.height);
  }
  if (!(cg.packed_w <= outline.width && cg.packed_h <= outline.height)) return std::nullopt;
  for (int m = 0; m < cg.n; ++m) {
    packed.x[m] = cg.llx[m] + cg.w[m] / 2.0;
    packed.y[m] = cg.lly[m] + cg.h[m] / 2.0;
  }
  return packed;
}

// Budget-exhausted fallback: snap the incumbents, best first.
bool snap_incumbents(const internal::PopBridge& bridge, const CsaqResult& res,
                     const std::vector<Placement>& population, const Netlist& netlist,
                     const Outline& outline, LaCsaqResult& out) {
  std::vector<int> order(population.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return res.best_f[a] < res.best_f[b]; });
  for (int i : order) {
    Placement cand = population[i];
    bridge.unpack(i, res.best_u[i], cand);
    if (auto packed = try_snap(cand, netlist, outline)) {
      Evaluator ev(netlist, outline);
      out.hpwl_before_compress = ev.hpwl(cand);
      out.placement = std::move(*packed);
      out.individual = i;
      out.compressed = true;
      out.legal = true;
      out.min_fl = 0.0;
      return true;
    }
  }
  return false;
}

} // namespace

LaCsaqResult la_csaq(std::vector<Placement>& population, const Netlist& netlist,
                     const Outline& outline, const LaCsaqConfig& cfg, std::uint64_t seed) {
  LaCsaqResult out;
  ObjectiveWeights w{0.0, cfg.lambda, cfg.mu};

  CsaqOptions opt;
  opt.k_max = cfg.k_max;
  opt.k_t = cfg.k_t;
  opt.use_controller = cfg.use_controller;
  opt.actions = cfg.actions;
  opt.fixed_c = cfg.fixed_c;
  opt.qcfg = cfg.qcfg;
  opt.stop_at_zero = true;
  opt.seed = seed;

  internal::PopBridge bridge(netlist, outline, population);

  // Acceptance probe: residual sliver violations rarely anneal to an exact
  // zero on tight outlines, but the snap closes them whenever the packed
  // extents (nearly) fit. Probing is limited to promising states and
  // rate-limited per individual to keep its cost negligible.
  Placement snapped;
  Placement scratch = population.front();
  double pre_snap_hpwl = 0.0;
  Evaluator ev(netlist, outline);
  const double probe_bar = 0.004 * netlist.total_area;
  std::vector<int> probe_cooldown(population.size(), 0);
  opt.window_hook = [&](int individual, std::span<const double> u, double f) {
    if (f > probe_bar) return false;
    if (probe_cooldown[individual] > 0) {
      --probe_cooldown[individual];
      return false;
    }
    probe_cooldown[individual] = 16;
    bridge.unpack(individual, u, scratch);
    if (auto packed = try_snap(scratch, netlist, outline)) {
      pre_snap_hpwl = ev.hpwl(scratch);
      snapped = std::move(*packed);
      return true;
    }
    return false;
  };

  CsaqResult res = csaq_run(bridge.fused(w, /*legal_only=*/true),
                            bridge.plain(w, /*legal_only=*/true),
                            bridge.pack_population(), opt);
  out.iterations = res.iterations_run;
  bridge.unpack_population(res.final_u, population);
  out.min_fl = res.min_f;

  if (res.zero_individual < 0) {
    if (snap_incumbents(bridge, res, population, netlist, outline, out)) return out;
    return out;
  }

  out.individual = res.zero_individual;
  if (res.hook_accepted) {
    out.placement = std::move(snapped);
    out.hpwl_before_compress = pre_snap_hpwl;
    out.compressed = true;
    out.legal = true;
    out.min_fl = 0.0;
    return out;
  }

  Placement legal = population[res.zero_individual];
  out.hpwl_before_compress = ev.hpwl(legal);
  CompressResult comp = compress(legal, netlist, outline);
  out.compressed = comp.applied;
  out.placement = std::move(comp.placement);
  out.legal = true;
  out.min_fl = 0.0;
  return out;
}

} // namespace csf
