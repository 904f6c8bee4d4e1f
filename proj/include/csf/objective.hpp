#pragma once

#include <vector>

#include "csf/geometry.hpp"
#include "csf/kernels.hpp"
#include "csf/rng.hpp"

namespace csf {

// Weights of f_g = alpha*W + lambda*D + mu*B. Legalization forces alpha = 0.
struct ObjectiveWeights {
  double alpha = 1.0;
  double lambda = 0.0;
  double mu = 0.0;
};

struct Subgradient {
  std::vector<double> gx, gy;

  void reset(std::size_t n) {
    gx.assign(n, 0.0);
    gy.assign(n, 0.0);
  }
};

// Overlap length of two centered intervals (three-branch piecewise form).
double overlap_len(double ci, double cj, double wi, double wj);

// Reusable evaluation context: owns the SoA buffers and kernel workspace so
// the optimizer's inner loop never allocates. Not thread-safe; use one per
// worker.
class Evaluator {
public:
  Evaluator(const Netlist& netlist, const Outline& outline);

  double hpwl(const Placement& p);
  double total_overlap(const Placement& p);
  double boundary(const Placement& p);

  double eval_fg(const Placement& p, const ObjectiveWeights& w);
  double eval_fl(const Placement& p, const ObjectiveWeights& w);

  // Accumulates the weighted subgradient into g (reset by the caller or via
  // the reset flag). Term order is fixed: W, then D, then B.
  void subgrad_fg(const Placement& p, const ObjectiveWeights& w, Rng& rng, Subgradient& g);
  void subgrad_fl(const Placement& p, const ObjectiveWeights& w, Rng& rng, Subgradient& g);

  const Outline& outline() const { return outline_; }
  const Netlist& netlist() const { return *netlist_; }

private:
  kern::PairView view(const Placement& p);

  const Netlist* netlist_;
  Outline outline_;
  kern::NetsView nets_;
  kern::Workspace ws_;
  std::vector<double> hw_, hh_;
};

// Convenience one-shot wrappers (tests and tools; the optimizer keeps an
// Evaluator).
double hpwl(const Placement& p, const Netlist& nl);
double total_overlap(const Placement& p, const Netlist& nl);
double boundary_violation(const Placement& p, const Netlist& nl, const Outline& o);
double eval_fg(const Placement& p, const Netlist& nl, const Outline& o, const ObjectiveWeights& w);
double eval_fl(const Placement& p, const Netlist& nl, const Outline& o, const ObjectiveWeights& w);
Subgradient subgrad_fg(const Placement& p, const Netlist& nl, const Outline& o,
                       const ObjectiveWeights& w, Rng& rng);
Subgradient subgrad_fl(const Placement& p, const Netlist& nl, const Outline& o,
                       const ObjectiveWeights& w, Rng& rng);

// Exact feasibility: D(p) == 0 and B(p) == 0 (no tolerance; both are sums of
// max(0, .) terms, so exact zero is attainable).
bool is_legal(const Placement& p, const Netlist& nl, const Outline& o);

} // namespace csf
