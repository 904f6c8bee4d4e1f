#include "csf/csa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace csf {

double csa_reward(double f_pre, double f_post) { return (f_pre - f_post) / 100.0; }

QController::QController(int states, int actions, QControllerConfig cfg, double init_value)
    : states_(states), actions_(actions), cfg_(cfg) {
  if (states < 1 || actions < 1) throw std::invalid_argument("q-table: empty dimension");
  if (!(init_value > 0.0)) throw std::invalid_argument("q-table: init value must be positive");
  q_.assign(static_cast<std::size_t>(states) * actions, init_value);
}

void QController::update(int state, int action, double reward) {
  if (states_ < 2)
    throw std::invalid_argument("q-table update needs at least two states");
  if (state < 0 || state >= states_ || action < 0 || action >= actions_)
    throw std::out_of_range("q-table: state/action out of range");
  double sum_other_max = 0.0;
  for (int l = 0; l < states_; ++l) {
    if (l == state) continue;
    double row_max = q_[l * actions_];
    for (int a = 1; a < actions_; ++a) row_max = std::max(row_max, q_[l * actions_ + a]);
    sum_other_max += row_max;
  }
  const double cur = q_[state * actions_ + action];
  const double q_max = cfg_.m0 * cur + (1.0 - cfg_.m0) / (states_ - 1) * sum_other_max;
  const double next = (1.0 - cfg_.alpha0) * cur + cfg_.alpha0 * (reward + cfg_.gamma0 * q_max);
  // The sampling rule reads the row as a probability weight vector, so a
  // heavily penalized cell is floored at a tiny positive mass instead of
  // going negative.
  q_[state * actions_ + action] = std::max(next, kQFloor);
}

int QController::sample_action(int state, Rng& rng) const {
  const double* row = &q_[state * actions_];
  double sum = 0.0;
  for (int a = 0; a < actions_; ++a) sum += row[a];
  if (!(sum > 0.0)) throw std::runtime_error("q-table row has non-positive sum");
  const double r = rng.u01() * sum;
  double acc = 0.0;
  for (int a = 0; a + 1 < actions_; ++a) {
    acc += row[a];
    if (r < acc) return a;
  }
  return actions_ - 1;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2_sq(std::span<const double> a) { return dot(a, a); }

} // namespace

CsaqResult csaq_run(const FusedEval& fused, const PlainEval& eval,
                    std::vector<std::vector<double>> population, const CsaqOptions& opt) {
  const int p = static_cast<int>(population.size());
  if (p < 1) throw std::invalid_argument("csaq: empty population");
  if (opt.use_controller && opt.actions.empty())
    throw std::invalid_argument("csaq: controller enabled without an action set");
  if (opt.use_controller && p < 2)
    throw std::invalid_argument("csaq: controller needs a population of at least two");
  if (opt.use_controller && opt.k_t < 1)
    throw std::invalid_argument("csaq: controller period must be at least 1");
  const int m = opt.use_controller ? static_cast<int>(opt.actions.size()) : 0;

  CsaqResult res;
  res.final_u = population;
  res.best_u = population;
  res.best_f.assign(p, 0.0);
  res.final_f.assign(p, 0.0);

  QController q(opt.use_controller ? p : 1, opt.use_controller ? m : 1, opt.qcfg);

  std::vector<Rng> rng;
  rng.reserve(p);
  for (int i = 0; i < p; ++i) rng.push_back(Rng::derive(opt.seed, i));

  std::vector<std::vector<double>> g_prev(p), g(p), d(p);
  std::vector<double> c(p, opt.fixed_c), f_ref(p, 0.0), last_f(p, 0.0);
  std::vector<int> action(p, 0);
  for (int i = 0; i < p; ++i) {
    const std::size_t dim = population[i].size();
    g_prev[i].assign(dim, 0.0);
    g[i].assign(dim, 0.0);
    d[i].assign(dim, 0.0);
  }

  auto track_best = [&](int i, std::span<const double> u, double f) {
    if (f < res.best_f[i]) {
      res.best_f[i] = f;
      res.best_u[i].assign(u.begin(), u.end());
    }
  };

  // g_0 in subdiff(f(u_0)), d_0 = 0; the initial evaluation also seeds the
  // incumbent and the first reward window.
  for (int i = 0; i < p; ++i) {
    const double f0 = fused(i, population[i], rng[i], g_prev[i]);
    res.best_f[i] = f0;
    res.best_u[i] = population[i];
    f_ref[i] = f0;
    last_f[i] = f0;
    if ((opt.stop_at_zero && f0 == 0.0) ||
        (opt.window_hook && opt.window_hook(i, population[i], f0))) {
      res.zero_individual = i;
      res.hook_accepted = f0 != 0.0;
      res.final_u = std::move(population);
      res.final_f = last_f;
      res.min_f = *std::min_element(res.best_f.begin(), res.best_f.end());
      return res;
    }
    if (opt.use_controller) {
      action[i] = static_cast<int>(rng[i].below(m));
      c[i] = opt.actions[action[i]];
    }
  }

  for (int k = 1; k <= opt.k_max; ++k) {
    res.iterations_run = k;
    for (int i = 0; i < p; ++i) {
      auto& u = population[i];
      std::fill(g[i].begin(), g[i].end(), 0.0);
      double f_here = fused(i, u, rng[i], g[i]);
      last_f[i] = f_here;
      const bool improved = f_here < res.best_f[i];
      track_best(i, u, f_here);
      if (opt.stop_at_zero && f_here == 0.0) {
        res.zero_individual = i;
        res.final_u = std::move(population);
        res.final_f = last_f;
        res.min_f = 0.0;
        return res;
      }
      const bool window_end = opt.k_t >= 1 && k % opt.k_t == 0;
      if ((window_end || improved) && opt.window_hook && opt.window_hook(i, u, f_here)) {
        res.zero_individual = i;
        res.hook_accepted = true;
        res.final_u = std::move(population);
        res.final_f = last_f;
        res.min_f = *std::min_element(res.best_f.begin(), res.best_f.end());
        return res;
      }
      if (window_end && opt.restart_from_best && res.best_f[i] < f_here) {
        u = res.best_u[i];
        f_here = res.best_f[i];
        std::fill(g[i].begin(), g[i].end(), 0.0);
        fused(i, u, rng[i], g[i]);
        g_prev[i] = g[i]; // eta vanishes: steepest restart from the incumbent
        std::fill(d[i].begin(), d[i].end(), 0.0);
      }
      if (opt.use_controller && window_end) {
        q.update(i, action[i], csa_reward(f_ref[i], f_here));
        action[i] = q.sample_action(i, rng[i]);
        c[i] = opt.actions[action[i]];
        f_ref[i] = f_here;
      }

      // Polak-Ribiere conjugate direction on subgradients.
      const double denom = norm2_sq(g_prev[i]);
      double eta = 0.0;
      if (denom > 0.0) {
        double num = 0.0;
        for (std::size_t t = 0; t < u.size(); ++t) num += g[i][t] * (g[i][t] - g_prev[i][t]);
        eta = num / denom;
      }
      double dn_sq = 0.0;
      for (std::size_t t = 0; t < u.size(); ++t) {
        d[i][t] = -g[i][t] + eta * d[i][t];
        dn_sq += d[i][t] * d[i][t];
      }
      if (dn_sq > 0.0) {
        const double step = c[i] / std::sqrt(dn_sq);
        for (std::size_t t = 0; t < u.size(); ++t) u[t] += step * d[i][t];
      }
      std::swap(g_prev[i], g[i]);
    }
  }

  res.min_f = std::numeric_limits<double>::infinity();
  for (int i = 0; i < p; ++i) {
    const double f_final = eval(i, population[i]);
    track_best(i, population[i], f_final);
    res.final_f[i] = f_final;
    if (opt.stop_at_zero && f_final == 0.0 && res.zero_individual < 0) res.zero_individual = i;
  }
  for (int i = 0; i < p; ++i) res.min_f = std::min(res.min_f, res.best_f[i]);
  res.final_u = std::move(population);
  return res;
}

CsaResult csa_run(const std::function<double(std::span<const double>)>& f,
                  const std::function<void(std::span<const double>, Rng&, std::span<double>)>& subgrad,
                  std::vector<double> u0, double c, int k_max, std::uint64_t seed) {
  if (k_max < 1) throw std::invalid_argument("csa: k_max must be at least 1");
  if (!(c > 0.0)) throw std::invalid_argument("csa: scale factor must be positive");
  const std::size_t dim = u0.size();
  Rng rng(seed);

  std::vector<double> g_prev(dim, 0.0), g(dim, 0.0), d(dim, 0.0);
  CsaResult res;
  res.best_u = u0;
  res.best_f = f(u0);
  subgrad(u0, rng, g_prev);

  std::vector<double> u = std::move(u0);
  for (int k = 1; k <= k_max; ++k) {
    res.iterations = k;
    std::fill(g.begin(), g.end(), 0.0);
    subgrad(u, rng, g);
    const double denom = norm2_sq(g_prev);
    double eta = 0.0;
    if (denom > 0.0) {
      double num = 0.0;
      for (std::size_t t = 0; t < dim; ++t) num += g[t] * (g[t] - g_prev[t]);
      eta = num / denom;
    }
    double dn_sq = 0.0;
    for (std::size_t t = 0; t < dim; ++t) {
      d[t] = -g[t] + eta * d[t];
      dn_sq += d[t] * d[t];
    }
    if (dn_sq == 0.0) break; // stationary
    const double step = c / std::sqrt(dn_sq);
    for (std::size_t t = 0; t < dim; ++t) u[t] += step * d[t];
    const double fu = f(u);
    if (fu < res.best_f) {
      res.best_f = fu;
      res.best_u = u;
    }
    std::swap(g_prev, g);
  }
  return res;
}

} // namespace csf
