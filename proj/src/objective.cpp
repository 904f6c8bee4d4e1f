#include "csf/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace csf {

double overlap_len(double ci, double cj, double wi, double wj) {
  const double dx = std::fabs(ci - cj);
  const double lo = std::fabs(wi - wj) / 2.0;
  const double hi = (wi + wj) / 2.0;
  if (dx <= lo) return std::min(wi, wj);
  if (dx <= hi) return (wi - 2.0 * dx + wj) / 2.0;
  return 0.0;
}

Evaluator::Evaluator(const Netlist& netlist, const Outline& outline)
    : netlist_(&netlist), outline_(outline) {
  const auto& t = netlist.topo;
  nets_.net_count = static_cast<int>(netlist.nets.size());
  nets_.offsets = t.offsets.data();
  nets_.pin_module = t.pin_module.data();
  nets_.tmin_x = t.tmin_x.data();
  nets_.tmax_x = t.tmax_x.data();
  nets_.tmin_y = t.tmin_y.data();
  nets_.tmax_y = t.tmax_y.data();
  nets_.cnt_tmin_x = t.cnt_tmin_x.data();
  nets_.cnt_tmax_x = t.cnt_tmax_x.data();
  nets_.cnt_tmin_y = t.cnt_tmin_y.data();
  nets_.cnt_tmax_y = t.cnt_tmax_y.data();
  hw_.resize(netlist.modules.size());
  hh_.resize(netlist.modules.size());
}

kern::PairView Evaluator::view(const Placement& p) {
  const int n = netlist_->module_count();
  if (static_cast<int>(p.size()) != n)
    throw std::invalid_argument("placement size does not match netlist");
  for (int i = 0; i < n; ++i) {
    const auto [w, h] = effective_dims(netlist_->modules[i], p.rotated[i] != 0);
    hw_[i] = w / 2.0;
    hh_[i] = h / 2.0;
  }
  return kern::PairView{n, p.x.data(), p.y.data(), hw_.data(), hh_.data()};
}

double Evaluator::hpwl(const Placement& p) {
  view(p); // validates size
  return kern::active_kernels().hpwl(nets_, p.x.data(), p.y.data());
}

double Evaluator::total_overlap(const Placement& p) {
  return kern::active_kernels().overlap(view(p), ws_);
}

double Evaluator::boundary(const Placement& p) {
  return kern::active_kernels().boundary(view(p), outline_.width, outline_.height);
}

double Evaluator::eval_fg(const Placement& p, const ObjectiveWeights& w) {
  const auto pv = view(p);
  const auto& k = kern::active_kernels();
  double f = 0.0;
  if (w.alpha != 0.0) f += w.alpha * k.hpwl(nets_, p.x.data(), p.y.data());
  if (w.lambda != 0.0) f += w.lambda * k.overlap(pv, ws_);
  if (w.mu != 0.0) f += w.mu * k.boundary(pv, outline_.width, outline_.height);
  return f;
}

double Evaluator::eval_fl(const Placement& p, const ObjectiveWeights& w) {
  ObjectiveWeights wl = w;
  wl.alpha = 0.0;
  return eval_fg(p, wl);
}

void Evaluator::subgrad_fg(const Placement& p, const ObjectiveWeights& w, Rng& rng, Subgradient& g) {
  const auto pv = view(p);
  const auto& k = kern::active_kernels();
  g.reset(p.size());
  if (w.alpha != 0.0) k.hpwl_subgrad(nets_, p.x.data(), p.y.data(), w.alpha, rng, g.gx.data(), g.gy.data());
  if (w.lambda != 0.0) k.overlap_subgrad(pv, w.lambda, rng, ws_, g.gx.data(), g.gy.data());
  if (w.mu != 0.0) k.boundary_subgrad(pv, outline_.width, outline_.height, w.mu, rng, g.gx.data(), g.gy.data());
}

void Evaluator::subgrad_fl(const Placement& p, const ObjectiveWeights& w, Rng& rng, Subgradient& g) {
  ObjectiveWeights wl = w;
  wl.alpha = 0.0;
  subgrad_fg(p, wl, rng, g);
}

double hpwl(const Placement& p, const Netlist& nl) {
  return Evaluator(nl, Outline{}).hpwl(p);
}

double total_overlap(const Placement& p, const Netlist& nl) {
  return Evaluator(nl, Outline{}).total_overlap(p);
}

double boundary_violation(const Placement& p, const Netlist& nl, const Outline& o) {
  return Evaluator(nl, o).boundary(p);
}

double eval_fg(const Placement& p, const Netlist& nl, const Outline& o, const ObjectiveWeights& w) {
  return Evaluator(nl, o).eval_fg(p, w);
}

double eval_fl(const Placement& p, const Netlist& nl, const Outline& o, const ObjectiveWeights& w) {
  return Evaluator(nl, o).eval_fl(p, w);
}

Subgradient subgrad_fg(const Placement& p, const Netlist& nl, const Outline& o,
                       const ObjectiveWeights& w, Rng& rng) {
  Subgradient g;
  Evaluator(nl, o).subgrad_fg(p, w, rng, g);
  return g;
}

Subgradient subgrad_fl(const Placement& p, const Netlist& nl, const Outline& o,
                       const ObjectiveWeights& w, Rng& rng) {
  Subgradient g;
  Evaluator(nl, o).subgrad_fl(p, w, rng, g);
  return g;
}

bool is_legal(const Placement& p, const Netlist& nl, const Outline& o) {
  Evaluator ev(nl, o);
  return ev.total_overlap(p) == 0.0 && ev.boundary(p) == 0.0;
}

} // namespace csf
