#pragma once

#include <functional>
#include <span>
#include <vector>

#include "csf/rng.hpp"

namespace csf {

// Scale-adaptation reward: (f_pre - f_post) / 100.
double csa_reward(double f_pre, double f_post);

struct QControllerConfig {
  double alpha0 = 0.4; // learning rate
  double gamma0 = 0.8; // discount rate
  double m0 = 0.6;     // mixing coefficient of Q_max
};

// Lower bound applied to updated Q cells: action-selection probabilities
// come straight from the row values, so cells must stay positive even under
// strongly negative rewards.
inline constexpr double kQFloor = 1e-6;

// p x m table of state-action values; states are population individuals,
// actions are candidate scale factors. Initialized uniformly positive.
class QController {
public:
  QController(int states, int actions, QControllerConfig cfg, double init_value = 1.0);

  // Q_max = m0*Q[i][j] + (1-m0)/(p-1) * sum_{l != i} max_a Q[l][a];
  // Q[i][j] <- (1-a0)*Q[i][j] + a0*(reward + g0*Q_max). Other cells unchanged.
  void update(int state, int action, double reward);

  // Draws an action with probability Q[i][j] / sum_l Q[i][l].
  int sample_action(int state, Rng& rng) const;

  double value(int state, int action) const { return q_[state * actions_ + action]; }
  void set_value(int state, int action, double v) { q_[state * actions_ + action] = v; }
  int states() const { return states_; }
  int actions() const { return actions_; }

private:
  int states_;
  int actions_;
  QControllerConfig cfg_;
  std::vector<double> q_;
};

// Objective callbacks. The fused form returns f(u) and accumulates the
// subgradient into g (zeroed by the engine before each call); the individual
// index lets floorplanning closures use per-individual rotation state.
using FusedEval = std::function<double(int individual, std::span<const double> u,
                                       Rng& rng, std::span<double> g)>;
using PlainEval = std::function<double(int individual, std::span<const double> u)>;

// Optional acceptance probe, run per individual at initialization, at every
// controller window, and whenever the incumbent improves: returning true ends
// the run with that individual (used by legalization to try closing residual
// slivers with a packing pass).
using WindowHook = std::function<bool(int individual, std::span<const double> u, double f)>;

struct CsaqOptions {
  int k_max = 50;
  int k_t = 10;               // controller period (ignored when disabled)
  bool use_controller = true; // false: plain CSA with fixed scale c
  std::vector<double> actions;
  double fixed_c = 1.0;
  QControllerConfig qcfg;
  bool stop_at_zero = false; // legalization early exit on f == 0
  // At each controller event, rewind the individual to its incumbent before
  // sampling the next scale. Fixed-norm steps never settle on their own, so
  // the rewind converts the multi-scale exploration into annealing.
  bool restart_from_best = false;
  WindowHook window_hook; // see above; empty = disabled
  std::uint64_t seed = 1; // per-individual streams derive from this
};

struct CsaqResult {
  std::vector<std::vector<double>> final_u;
  std::vector<double> final_f;
  std::vector<std::vector<double>> best_u; // per-individual incumbents
  std::vector<double> best_f;
  int zero_individual = -1; // first individual that hit f == 0 (if stop_at_zero)
  bool hook_accepted = false; // zero_individual was ended by the window hook
  int iterations_run = 0;
  double min_f = 0.0; // min over all incumbents
};

// Population conjugate-subgradient iteration with optional Q-learning scale
// control. Deterministic for a fixed seed.
CsaqResult csaq_run(const FusedEval& fused, const PlainEval& eval,
                    std::vector<std::vector<double>> population,
                    const CsaqOptions& opt);

struct CsaResult {
  std::vector<double> best_u;
  double best_f = 0.0;
  int iterations = 0;
};

// Single-solution conjugate subgradient iteration (fixed scale factor).
// Returns the incumbent best. Terminates early at a stationary direction.
CsaResult csa_run(const std::function<double(std::span<const double>)>& f,
                  const std::function<void(std::span<const double>, Rng&, std::span<double>)>& subgrad,
                  std::vector<double> u0, double c, int k_max, std::uint64_t seed = 1);

} // namespace csf
