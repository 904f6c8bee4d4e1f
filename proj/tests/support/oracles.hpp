#pragma once

// Test-only oracles, independent of the kernel implementations: interval
// min/max geometry instead of the three-branch overlap form, and direct
// per-net bounding boxes from the Net lists instead of the CSR topology.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "csf/geometry.hpp"
#include "csf/rng.hpp"

namespace oracle {

using csf::Netlist;
using csf::Placement;

inline double interval_overlap(double lo1, double hi1, double lo2, double hi2) {
  return std::max(0.0, std::min(hi1, hi2) - std::max(lo1, lo2));
}

struct Box {
  double lx, ly, hx, hy;
};

inline Box module_box(const Netlist& nl, const Placement& p, int i) {
  const auto [w, h] = csf::effective_dims(nl.modules[i], p.rotated[i] != 0);
  return {p.x[i] - w / 2.0, p.y[i] - h / 2.0, p.x[i] + w / 2.0, p.y[i] + h / 2.0};
}

// Pairwise rectangle-intersection area, straight from corner coordinates.
inline double total_overlap(const Netlist& nl, const Placement& p) {
  const int n = nl.module_count();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const Box a = module_box(nl, p, i);
    for (int j = i + 1; j < n; ++j) {
      const Box b = module_box(nl, p, j);
      sum += interval_overlap(a.lx, a.hx, b.lx, b.hx) * interval_overlap(a.ly, a.hy, b.ly, b.hy);
    }
  }
  return sum;
}

// Per-net bounding box over module centers and terminal coordinates.
inline double hpwl(const Netlist& nl, const Placement& p) {
  double sum = 0.0;
  for (const csf::Net& net : nl.nets) {
    double lx = std::numeric_limits<double>::infinity(), hx = -lx;
    double ly = lx, hy = -lx;
    for (int m : net.module_pins) {
      lx = std::min(lx, p.x[m]);
      hx = std::max(hx, p.x[m]);
      ly = std::min(ly, p.y[m]);
      hy = std::max(hy, p.y[m]);
    }
    for (int t : net.terminal_pins) {
      lx = std::min(lx, nl.terminals[t].x);
      hx = std::max(hx, nl.terminals[t].x);
      ly = std::min(ly, nl.terminals[t].y);
      hy = std::max(hy, nl.terminals[t].y);
    }
    sum += (hx - lx) + (hy - ly);
  }
  return sum;
}

inline double boundary(const Netlist& nl, const Placement& p, const csf::Outline& o) {
  double sum = 0.0;
  for (int i = 0; i < nl.module_count(); ++i) {
    const Box b = module_box(nl, p, i);
    sum += std::max(0.0, -b.lx) + std::max(0.0, b.hx - o.width) + std::max(0.0, -b.ly) +
           std::max(0.0, b.hy - o.height);
  }
  return sum;
}

// Random instance with dyadic dimensions (quarters), so packed coordinates
// and overlap breakpoints stay exactly representable.
inline Netlist random_netlist(csf::Rng& rng, int n_modules, int n_terminals, int n_nets) {
  Netlist nl;
  nl.name = "random";
  for (int i = 0; i < n_modules; ++i) {
    csf::ModuleSpec m;
    m.id = i;
    m.name = "m" + std::to_string(i);
    m.width = (1 + rng.below(40)) * 0.25;
    m.height = (1 + rng.below(40)) * 0.25;
    nl.modules.push_back(std::move(m));
  }
  for (int t = 0; t < n_terminals; ++t) {
    nl.terminals.push_back({"t" + std::to_string(t), (double)rng.below(101), (double)rng.below(101)});
  }
  for (int e = 0; e < n_nets; ++e) {
    csf::Net net;
    const int deg = 2 + static_cast<int>(rng.below(4));
    int guard = 0;
    while (static_cast<int>(net.degree()) < deg && guard++ < 50) {
      if (n_terminals > 0 && rng.u01() < 0.2) {
        int t = static_cast<int>(rng.below(n_terminals));
        if (std::find(net.terminal_pins.begin(), net.terminal_pins.end(), t) ==
            net.terminal_pins.end())
          net.terminal_pins.push_back(t);
      } else {
        int m = static_cast<int>(rng.below(n_modules));
        if (std::find(net.module_pins.begin(), net.module_pins.end(), m) ==
            net.module_pins.end())
          net.module_pins.push_back(m);
      }
    }
    if (net.degree() == 0) net.module_pins.push_back(0);
    nl.nets.push_back(std::move(net));
  }
  nl.finalize();
  return nl;
}

// Placement with coordinates on a fine dyadic grid inside [0, span]^2.
inline Placement random_placement(csf::Rng& rng, int n, double span = 100.0, bool rotations = true) {
  Placement p = Placement::sized(n);
  for (int i = 0; i < n; ++i) {
    p.x[i] = rng.below(static_cast<std::uint64_t>(span * 4) + 1) * 0.25;
    p.y[i] = rng.below(static_cast<std::uint64_t>(span * 4) + 1) * 0.25;
    p.rotated[i] = rotations && rng.bernoulli(0.5) ? 1 : 0;
  }
  return p;
}

// Continuous (off-grid) placement for finite-difference work.
inline Placement random_placement_cont(csf::Rng& rng, int n, double span = 100.0) {
  Placement p = Placement::sized(n);
  for (int i = 0; i < n; ++i) {
    p.x[i] = rng.u01() * span;
    p.y[i] = rng.u01() * span;
    p.rotated[i] = rng.bernoulli(0.5) ? 1 : 0;
  }
  return p;
}

// True when every piecewise branch condition sits at least `margin` away
// from its breakpoint: overlap kinks, boundary kinks, and strict HPWL
// argmax/argmin margins per net and axis.
inline bool is_smooth_at(const Netlist& nl, const Placement& p, const csf::Outline& o,
                         double margin) {
  const int n = nl.module_count();
  std::vector<double> hw(n), hh(n);
  for (int i = 0; i < n; ++i) {
    const auto [w, h] = csf::effective_dims(nl.modules[i], p.rotated[i] != 0);
    hw[i] = w / 2.0;
    hh[i] = h / 2.0;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dx = std::fabs(p.x[i] - p.x[j]);
      const double dy = std::fabs(p.y[i] - p.y[j]);
      if (std::fabs(dx - std::fabs(hw[i] - hw[j])) < margin) return false;
      if (std::fabs(dx - (hw[i] + hw[j])) < margin) return false;
      if (std::fabs(dy - std::fabs(hh[i] - hh[j])) < margin) return false;
      if (std::fabs(dy - (hh[i] + hh[j])) < margin) return false;
    }
    if (std::fabs(hw[i] - p.x[i]) < margin) return false;
    if (std::fabs(p.x[i] + hw[i] - o.width) < margin) return false;
    if (std::fabs(hh[i] - p.y[i]) < margin) return false;
    if (std::fabs(p.y[i] + hh[i] - o.height) < margin) return false;
  }
  for (const csf::Net& net : nl.nets) {
    for (int axis = 0; axis < 2; ++axis) {
      std::vector<double> vals;
      for (int m : net.module_pins) vals.push_back(axis ? p.y[m] : p.x[m]);
      for (int t : net.terminal_pins)
        vals.push_back(axis ? nl.terminals[t].y : nl.terminals[t].x);
      if (vals.size() < 2) continue;
      std::sort(vals.begin(), vals.end());
      // Unique extremes with clearance.
      if (vals[1] - vals[0] < margin) return false;
      if (vals[vals.size() - 1] - vals[vals.size() - 2] < margin) return false;
    }
  }
  return true;
}

} // namespace oracle
