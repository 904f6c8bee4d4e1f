#pragma once

// Bridges Placement populations to the flat (x || y) vectors the CSA engine
// iterates, carrying each individual's rotation bits through the objective
// closures. Engine iteration is sequential, so one Evaluator is shared.

#include <span>
#include <vector>

#include "csf/csa.hpp"
#include "csf/geometry.hpp"
#include "csf/objective.hpp"

namespace csf::internal {

class PopBridge {
public:
  PopBridge(const Netlist& netlist, const Outline& outline, const std::vector<Placement>& pop)
      : ev_(netlist, outline), tmp_(pop), n_(netlist.module_count()) {}

  std::vector<std::vector<double>> pack_population() const {
    std::vector<std::vector<double>> u(tmp_.size());
    for (std::size_t i = 0; i < tmp_.size(); ++i) {
      u[i].resize(2 * n_);
      for (int m = 0; m < n_; ++m) {
        u[i][m] = tmp_[i].x[m];
        u[i][n_ + m] = tmp_[i].y[m];
      }
    }
    return u;
  }

  void unpack_population(const std::vector<std::vector<double>>& u, std::vector<Placement>& pop) const {
    for (std::size_t i = 0; i < pop.size(); ++i) unpack(i, u[i], pop[i]);
  }

  void unpack(int individual, std::span<const double> u, Placement& out) const {
    out.rotated = tmp_[individual].rotated;
    out.x.assign(u.begin(), u.begin() + n_);
    out.y.assign(u.begin() + n_, u.begin() + 2 * n_);
  }

  FusedEval fused(const ObjectiveWeights& w, bool legal_only) {
    return [this, w, legal_only](int i, std::span<const double> u, Rng& rng, std::span<double> g) {
      load(i, u);
      const double f = legal_only ? ev_.eval_fl(tmp_[i], w) : ev_.eval_fg(tmp_[i], w);
      if (legal_only) {
        ev_.subgrad_fl(tmp_[i], w, rng, sg_);
      } else {
        ev_.subgrad_fg(tmp_[i], w, rng, sg_);
      }
      for (int m = 0; m < n_; ++m) {
        g[m] += sg_.gx[m];
        g[n_ + m] += sg_.gy[m];
      }
      return f;
    };
  }

  PlainEval plain(const ObjectiveWeights& w, bool legal_only) {
    return [this, w, legal_only](int i, std::span<const double> u) {
      load(i, u);
      return legal_only ? ev_.eval_fl(tmp_[i], w) : ev_.eval_fg(tmp_[i], w);
    };
  }

private:
  void load(int i, std::span<const double> u) {
    Placement& p = tmp_[i];
    for (int m = 0; m < n_; ++m) {
      p.x[m] = u[m];
      p.y[m] = u[n_ + m];
    }
  }

  Evaluator ev_;
  mutable std::vector<Placement> tmp_;
  Subgradient sg_;
  int n_;
};

} // namespace csf::internal
