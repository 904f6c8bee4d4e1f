#include "csf/constraint_graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "csf/kernels.hpp"
#include "csf/objective.hpp"

namespace csf {
namespace {

constexpr double kSlackTol = 1e-9; // float dust guard on longest-path sums

// Kahn topological order; throws naming an arc on a cycle.
std::vector<int> topo_order(const BitDag& g, const char* which) {
  const int n = g.size();
  std::vector<int> indeg(n, 0);
  for (int u = 0; u < n; ++u) g.for_out(u, [&](int v) { ++indeg[v]; });
  std::vector<int> order;
  order.reserve(n);
  std::vector<int> stack;
  for (int v = n - 1; v >= 0; --v) {
    if (indeg[v] == 0) stack.push_back(v);
  }
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    order.push_back(u);
    g.for_out(u, [&](int v) {
      if (--indeg[v] == 0) stack.push_back(v);
    });
  }
  if (static_cast<int>(order.size()) != n) {
    std::vector<char> done(n, 0);
    for (int u : order) done[u] = 1;
    for (int u = 0; u < n; ++u) {
      if (done[u]) continue;
      int hit = -1;
      g.for_out(u, [&](int v) {
        if (!done[v] && hit < 0) hit = v;
      });
      if (hit >= 0) {
        throw std::runtime_error(std::string("constraint graph cycle through arc ") + which +
                                 " " + std::to_string(u) + "->" + std::to_string(hit));
      }
    }
    throw std::runtime_error("constraint graph cycle");
  }
  return order;
}

// Longest-path start coordinates: ll[v] = max over preds u of ll[u] + dim[u].
double pack_axis(const BitDag& g, const std::vector<double>& dim,
                 const std::vector<int>& order, std::vector<double>& ll) {
  const int n = g.size();
  ll.assign(n, 0.0);
  for (int u : order) {
    const double reach = ll[u] + dim[u];
    g.for_out(u, [&](int v) {
      if (reach > ll[v]) ll[v] = reach;
    });
  }
  double extent = 0.0;
  for (int v = 0; v < n; ++v) extent = std::max(extent, ll[v] + dim[v]);
  return extent;
}

// Longest tail below/right of each node: tail[u] = max over succs v of
// dim[v] + tail[v].
void tail_axis(const BitDag& g, const std::vector<double>& dim,
               const std::vector<int>& order, std::vector<double>& tail) {
  const int n = g.size();
  tail.assign(n, 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int u = *it;
    double best = 0.0;
    g.for_out(u, [&](int v) { best = std::max(best, dim[v] + tail[v]); });
    tail[u] = best;
  }
}

void require_pair_complete(const CgPair& cg) {
  for (int a = 0; a < cg.n; ++a) {
    for (int b = a + 1; b < cg.n; ++b) {
      if (!(cg.hcg.has(a, b) || cg.hcg.has(b, a) || cg.vcg.has(a, b) || cg.vcg.has(b, a))) {
        throw std::runtime_error("constraint graph pair " + std::to_string(a) + "," +
                                 std::to_string(b) + " is unordered");
      }
    }
  }
}

double packed_hpwl(const CgPair& cg, const Netlist& netlist,
                   std::vector<double>& cx, std::vector<double>& cy) {
  cx.resize(cg.n);
  cy.resize(cg.n);
  for (int i = 0; i < cg.n; ++i) {
    cx[i] = cg.llx[i] + cg.w[i] / 2.0;
    cy[i] = cg.lly[i] + cg.h[i] / 2.0;
  }
  const auto& t = netlist.topo;
  kern::NetsView nv;
  nv.net_count = static_cast<int>(netlist.nets.size());
  nv.offsets = t.offsets.data();
  nv.pin_module = t.pin_module.data();
  nv.tmin_x = t.tmin_x.data();
  nv.tmax_x = t.tmax_x.data();
  nv.tmin_y = t.tmin_y.data();
  nv.tmax_y = t.tmax_y.data();
  nv.cnt_tmin_x = t.cnt_tmin_x.data();
  nv.cnt_tmax_x = t.cnt_tmax_x.data();
  nv.cnt_tmin_y = t.cnt_tmin_y.data();
  nv.cnt_tmax_y = t.cnt_tmax_y.data();
  return kern::active_kernels().hpwl(nv, cx.data(), cy.data());
}

struct IlgAxis {
  bool horizontal;
  double limit; // outline extent along the legalized axis
};

} // namespace

CgPair build_cg(const Placement& placement, const Netlist& netlist) {
  const int n = netlist.module_count();
  if (static_cast<int>(placement.size()) != n)
    throw std::invalid_argument("build_cg: placement size mismatch");
  CgPair cg;
  cg.n = n;
  cg.w.resize(n);
  cg.h.resize(n);
  cg.hcg.reset(n);
  cg.vcg.reset(n);
  std::vector<double> llx(n), lly(n);
  for (int i = 0; i < n; ++i) {
    const auto [w, h] = effective_dims(netlist.modules[i], placement.rotated[i] != 0);
    cg.w[i] = w;
    cg.h[i] = h;
    llx[i] = placement.x[i] - w / 2.0;
    lly[i] = placement.y[i] - h / 2.0;
  }
  // Arc direction follows the axis of the graph it lands in: horizontal arcs
  // run lefter -> righter, vertical arcs lower -> upper (ties broken by the
  // other axis, then id). A single lexicographic "smaller corner" endpoint
  // would invert arcs whenever the lefter module is the upper one, and the
  // packed layout then degenerates into a near-chain.
  auto lefter = [&](int i, int j) {
    if (llx[i] != llx[j]) return llx[i] < llx[j];
    if (lly[i] != lly[j]) return lly[i] < lly[j];
    return i < j;
  };
  auto lower = [&](int i, int j) {
    if (lly[i] != lly[j]) return lly[i] < lly[j];
    if (llx[i] != llx[j]) return llx[i] < llx[j];
    return i < j;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int hx = lefter(i, j) ? i : j; // HCG tail candidate
      const int vy = lower(i, j) ? i : j;  // VCG tail candidate
      const double ox = overlap_len(placement.x[i], placement.x[j], cg.w[i], cg.w[j]);
      const double oy = overlap_len(placement.y[i], placement.y[j], cg.h[i], cg.h[j]);
      if (ox <= 0.0 && oy <= 0.0) {
        cg.hcg.add(hx, i + j - hx);
        cg.vcg.add(vy, i + j - vy);
      } else if (oy > 0.0 && ox <= 0.0) {
        cg.hcg.add(hx, i + j - hx);
      } else if (ox > 0.0 && oy <= 0.0) {
        cg.vcg.add(vy, i + j - vy);
      } else if (ox > oy) {
        cg.vcg.add(vy, i + j - vy);
      } else {
        cg.hcg.add(hx, i + j - hx); // includes the exact tie
      }
    }
  }
  return cg;
}

void repack(CgPair& cg) {
  const auto ox = topo_order(cg.hcg, "HCG");
  const auto oy = topo_order(cg.vcg, "VCG");
  cg.packed_w = pack_axis(cg.hcg, cg.w, ox, cg.llx);
  cg.packed_h = pack_axis(cg.vcg, cg.h, oy, cg.lly);
}

Placement pack(CgPair& cg, const Placement& reference) {
  require_pair_complete(cg);
  repack(cg);
  Placement out = reference;
  for (int i = 0; i < cg.n; ++i) {
    out.x[i] = cg.llx[i] + cg.w[i] / 2.0;
    out.y[i] = cg.lly[i] + cg.h[i] / 2.0;
  }
  return out;
}

SlackSet slacks(const CgPair& cg, double outline_w, double outline_h) {
  SlackSet s;
  const auto ox = topo_order(cg.hcg, "HCG");
  const auto oy = topo_order(cg.vcg, "VCG");
  const double span_x = std::max(cg.packed_w, outline_w);
  const double span_y = std::max(cg.packed_h, outline_h);

  std::vector<double> tail;
  s.sx.resize(cg.n);
  s.sy.resize(cg.n);
  tail_axis(cg.hcg, cg.w, ox, tail);
  for (int v = 0; v < cg.n; ++v) s.sx[v] = (span_x - tail[v] - cg.w[v]) - cg.llx[v];
  tail_axis(cg.vcg, cg.h, oy, tail);
  for (int v = 0; v < cg.n; ++v) s.sy[v] = (span_y - tail[v] - cg.h[v]) - cg.lly[v];
  return s;
}

double critical_weight(const CgPair& cg, const SlackSet& s, Arc arc, bool horizontal) {
  const int a = arc.from, b = arc.to;
  if (horizontal) {
    return cg.lly[a] <= cg.lly[b] ? s.sy[a] - cg.h[b] : s.sy[b] - cg.h[a];
  }
  return cg.llx[a] <= cg.llx[b] ? s.sx[a] - cg.w[b] : s.sx[b] - cg.w[a];
}

std::vector<Arc> compressible_arcs(const CgPair& cg, bool horizontal) {
  const BitDag& primary = horizontal ? cg.hcg : cg.vcg;
  const BitDag& secondary = horizontal ? cg.vcg : cg.hcg;
  const std::vector<double>& lo = horizontal ? cg.lly : cg.llx;
  const std::vector<double>& dim = horizontal ? cg.h : cg.w;
  std::vector<Arc> out;
  for (int u = 0; u < cg.n; ++u) {
    primary.for_out(u, [&](int v) {
      const bool disjoint = lo[u] + dim[u] <= lo[v] + kSlackTol ||
                            lo[v] + dim[v] <= lo[u] + kSlackTol;
      if (disjoint && (secondary.has(u, v) || secondary.has(v, u))) {
        out.push_back(Arc{u, v});
      }
    });
  }
  return out;
}

void compact(CgPair& cg, double fit_w, double fit_h) {
  while (!(cg.packed_w <= fit_w && cg.packed_h <= fit_h)) {
    bool removed = false;
    for (bool horizontal : {true, false}) {
      const auto redundant = compressible_arcs(cg, horizontal);
      if (redundant.empty()) continue;
      BitDag& g = horizontal ? cg.hcg : cg.vcg;
      for (const Arc& arc : redundant) g.remove(arc.from, arc.to);
      repack(cg);
      removed = true;
    }
    if (!removed) break;
  }
}

namespace {

IlgStatus ilg_axis(const IlgAxis& axis, double outline_w, double outline_h, CgPair& cg,
                   const Netlist& netlist, int k, std::span<const double> pw, Rng& rng,
                   int max_moves) {
  BitDag& primary = axis.horizontal ? cg.hcg : cg.vcg;
  BitDag& secondary = axis.horizontal ? cg.vcg : cg.hcg;
  std::vector<double> cx, cy;

  repack(cg);
  while ((axis.horizontal ? cg.packed_w : cg.packed_h) > axis.limit) {
    if (max_moves-- <= 0) return IlgStatus::Budget;
    const auto comp = compressible_arcs(cg, axis.horizontal);
    if (!comp.empty()) {
      primary.remove(comp.front().from, comp.front().to);
      repack(cg);
      continue;
    }

    const SlackSet s = slacks(cg, outline_w, outline_h);
    const std::vector<double>& sp = axis.horizontal ? s.sx : s.sy;
    std::vector<Arc> critical;
    for (int u = 0; u < cg.n; ++u) {
      if (std::fabs(sp[u]) > kSlackTol) continue;
      primary.for_out(u, [&](int v) {
        if (std::fabs(sp[v]) <= kSlackTol) critical.push_back(Arc{u, v});
      });
    }
    if (critical.empty()) return IlgStatus::Stall;

    std::vector<std::pair<double, Arc>> weighted;
    weighted.reserve(critical.size());
    for (const Arc& arc : critical) {
      weighted.push_back({critical_weight(cg, s, arc, axis.horizontal), arc});
    }
    std::stable_sort(weighted.begin(), weighted.end(), [](const auto& l, const auto& r) {
      if (l.first != r.first) return l.first > r.first;
      if (l.second.from != r.second.from) return l.second.from < r.second.from;
      return l.second.to < r.second.to;
    });
    const int kk = std::min<int>(k, static_cast<int>(weighted.size()));

    // The orthogonal insertion direction follows the packed coordinates of
    // the current layout.
    const std::vector<double>& ortho = axis.horizontal ? cg.lly : cg.llx;
    auto directed = [&](Arc arc) {
      return ortho[arc.from] <= ortho[arc.to] ? arc : Arc{arc.to, arc.from};
    };

    struct Candidate {
      Arc arc;
      double increment;
      int rank; // weight order, for stable increment ties
    };
    std::vector<Candidate> cands;
    cands.reserve(kk);
    const double base = packed_hpwl(cg, netlist, cx, cy);
    for (int t = 0; t < kk; ++t) {
      const Arc arc = weighted[t].second;
      const Arc ins = directed(arc);
      const bool existed = secondary.has(ins.from, ins.to);
      primary.remove(arc.from, arc.to);
      secondary.add(ins.from, ins.to);
      repack(cg);
      const double inc = packed_hpwl(cg, netlist, cx, cy) - base;
      if (!existed) secondary.remove(ins.from, ins.to);
      primary.add(arc.from, arc.to);
      cands.push_back({arc, inc, t});
    }
    repack(cg); // restore packed state of the unmodified graphs
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& l, const Candidate& r) {
      if (l.increment != r.increment) return l.increment < r.increment;
      return l.rank < r.rank;
    });

    const std::size_t take = std::min<std::size_t>(cands.size(), pw.size());
    const std::size_t pick = rng.discrete(pw.subspan(0, take));
    const Arc arc = cands[pick].arc;
    const Arc ins = directed(arc);
    primary.remove(arc.from, arc.to);
    secondary.add(ins.from, ins.to);
    repack(cg);
  }
  return IlgStatus::Fit;
}

} // namespace

IlgStatus ilg_x(double outline_w, double outline_h, CgPair& cg, const Netlist& netlist,
                int k, std::span<const double> pw, Rng& rng, int max_moves) {
  return ilg_axis({true, outline_w}, outline_w, outline_h, cg, netlist, k, pw, rng, max_moves);
}

IlgStatus ilg_y(double outline_w, double outline_h, CgPair& cg, const Netlist& netlist,
                int k, std::span<const double> pw, Rng& rng, int max_moves) {
  return ilg_axis({false, outline_h}, outline_w, outline_h, cg, netlist, k, pw, rng, max_moves);
}

CgLegalizeResult ila_cg(std::vector<Placement>& population, const Netlist& netlist,
                        const Outline& outline, int n_max, int k,
                        std::span<const double> pw, std::uint64_t seed) {
  CgLegalizeResult res;
  for (std::size_t i = 0; i < population.size(); ++i) {
    Rng rng = Rng::derive(seed, i);
    bool stalled = false;
    for (int round = 1; round <= n_max; ++round) {
      CgPair cg = build_cg(population[i], netlist);
      population[i] = pack(cg, population[i]);
      if (ilg_x(outline.width, outline.height, cg, netlist, k, pw, rng) == IlgStatus::Stall ||
          ilg_y(outline.width, outline.height, cg, netlist, k, pw, rng) == IlgStatus::Stall) {
        stalled = true;
        Placement packed = population[i];
        for (int m = 0; m < cg.n; ++m) {
          packed.x[m] = cg.llx[m] + cg.w[m] / 2.0;
          packed.y[m] = cg.lly[m] + cg.h[m] / 2.0;
        }
        population[i] = packed;
        break;
      }
      Placement packed = population[i];
      for (int m = 0; m < cg.n; ++m) {
        packed.x[m] = cg.llx[m] + cg.w[m] / 2.0;
        packed.y[m] = cg.lly[m] + cg.h[m] / 2.0;
      }
      population[i] = packed;
      res.rounds_used = round;
      if (cg.packed_w <= outline.width && cg.packed_h <= outline.height) {
        res.legal = true;
        res.placement = population[i];
        res.individual = static_cast<int>(i);
        return res;
      }
    }
    if (stalled) res.stalled = true;
  }
  res.budget_exhausted = true;
  return res;
}

CgLegalizeResult la_cg(std::vector<Placement>& population, const Netlist& netlist,
                       const Outline& outline, int n_max, std::uint64_t seed) {
  const double unit[] = {1.0};
  return ila_cg(population, netlist, outline, n_max, 1, unit, seed);
}

} // namespace csf
