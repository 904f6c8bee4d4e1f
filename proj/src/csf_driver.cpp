#include "csf/csf_driver.hpp"
#include <cstdio>

#include <chrono>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "csf/objective.hpp"

namespace csf {

Mode mode_from_string(const std::string& s) {
  if (s == "cc") return Mode::cc;
  if (s == "qc") return Mode::qc;
  if (s == "qq") return Mode::qq;
  throw std::invalid_argument("unknown mode: " + s);
}

LegalizerKind legalizer_from_string(const std::string& s) {
  if (s == "la-csaq") return LegalizerKind::LaCsaq;
  if (s == "la-cg") return LegalizerKind::LaCg;
  if (s == "ila-cgm") return LegalizerKind::IlaCgm;
  if (s == "ila-cgs") return LegalizerKind::IlaCgs;
  throw std::invalid_argument("unknown legalizer: " + s);
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::cc: return "cc";
    case Mode::qc: return "qc";
    default: return "qq";
  }
}

std::string to_string(LegalizerKind k) {
  switch (k) {
    case LegalizerKind::LaCsaq: return "la-csaq";
    case LegalizerKind::LaCg: return "la-cg";
    case LegalizerKind::IlaCgm: return "ila-cgm";
    default: return "ila-cgs";
  }
}

std::vector<Placement> lhs_init(const Netlist& netlist, const Outline& outline, int p, Rng& rng) {
  if (p < 1) throw std::invalid_argument("lhs_init: population must be at least 1");
  const int n = netlist.module_count();
  std::vector<Placement> pop(p, Placement::sized(n));
  std::vector<int> perm(p);
  const double sw = outline.width / p;
  const double sh = outline.height / p;
  auto shuffle = [&] {
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = p - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
  };
  for (int m = 0; m < n; ++m) {
    shuffle();
    for (int i = 0; i < p; ++i) pop[i].x[m] = (perm[i] + rng.u01()) * sw;
    shuffle();
    for (int i = 0; i < p; ++i) pop[i].y[m] = (perm[i] + rng.u01()) * sh;
    for (int i = 0; i < p; ++i) pop[i].rotated[m] = rng.bernoulli(0.5) ? 1 : 0;
  }
  return pop;
}

void rotate_random(Placement& placement, Rng& rng, double prob) {
  if (prob < 0.0 || prob > 1.0) throw std::invalid_argument("rotate_random: probability out of range");
  for (auto& bit : placement.rotated) {
    if (rng.bernoulli(prob)) bit ^= 1;
  }
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

RunResult run_csf(const Netlist& netlist, const Outline& outline, const CsfConfig& cfg) {
  if (cfg.t_max < 1) throw std::invalid_argument("run_csf: t_max must be at least 1");
  if (cfg.population < 2) throw std::invalid_argument("run_csf: population must be at least 2");

  const auto wall0 = std::chrono::steady_clock::now();
  RunResult res;
  res.residual_fl = std::numeric_limits<double>::infinity();

  Rng driver = Rng::derive(cfg.seed, 0x5eedull);
  std::vector<Placement> pop = lhs_init(netlist, outline, cfg.population, driver);
  Evaluator ev(netlist, outline);
  const ObjectiveWeights fl_w{0.0, cfg.la.lambda, cfg.la.mu};

  const double pw_cgm[] = {0.9, 0.05, 0.05};
  const double pw_cgs[] = {1.0, 0.0, 0.0};

  for (int attempt = 1; attempt <= cfg.t_max; ++attempt) {
    res.restarts = attempt;

    auto tg0 = std::chrono::steady_clock::now();
    GlobalStats gs = gfloorplan(pop, netlist, outline, cfg.global, Rng::mix(cfg.seed, 0x6f00u + attempt));
    res.t_g += seconds_since(tg0);
    fprintf(stderr, "[csf] attempt %d gp passes=%d near=%d\n", attempt, gs.passes, gs.near_feasible);

    auto tl0 = std::chrono::steady_clock::now();
    bool legal = false;
    Placement legal_placement;
    double hpwl_pre = 0.0;
    const std::uint64_t lseed = Rng::mix(cfg.seed, 0x1a00u + attempt);
    if (cfg.legalizer == LegalizerKind::LaCsaq) {
      LaCsaqResult lr = la_csaq(pop, netlist, outline, cfg.la, lseed);
      legal = lr.legal;
      if (legal) {
        legal_placement = std::move(lr.placement);
        hpwl_pre = lr.hpwl_before_compress;
      } else {
        res.residual_fl = std::min(res.residual_fl, lr.min_fl);
      }
    } else {
      CgLegalizeResult lr;
      if (cfg.legalizer == LegalizerKind::LaCg) {
        lr = la_cg(pop, netlist, outline, cfg.cg_n_max, lseed);
      } else if (cfg.legalizer == LegalizerKind::IlaCgm) {
        lr = ila_cg(pop, netlist, outline, cfg.cg_n_max, 3, pw_cgm, lseed);
      } else {
        lr = ila_cg(pop, netlist, outline, cfg.cg_n_max, 3, pw_cgs, lseed);
      }
      legal = lr.legal;
      if (legal) {
        legal_placement = std::move(lr.placement);
        hpwl_pre = ev.hpwl(legal_placement);
      } else {
        for (const Placement& p : pop) {
          res.residual_fl = std::min(res.residual_fl, ev.eval_fl(p, fl_w));
        }
      }
    }
    res.t_l += seconds_since(tl0);

    if (legal) {
      res.legal = true;
      res.placement = std::move(legal_placement);
      res.hpwl = ev.hpwl(res.placement);
      res.hpwl_before_compress = hpwl_pre;
      res.residual_fl = 0.0;
      break;
    }

    // Restart: resample the whole population (failed attempts otherwise
    // orbit the same fragmented layouts) and rotate random modules.
    if (res.placement.size() == 0) res.placement = pop.front();
    pop = lhs_init(netlist, outline, cfg.population, driver);
    for (Placement& p : pop) rotate_random(p, driver, cfg.rotate_prob);
  }

  if (!res.legal && res.placement.size() > 0) {
    double best = std::numeric_limits<double>::infinity();
    for (const Placement& p : pop) {
      const double f = ev.eval_fl(p, fl_w);
      if (f < best) {
        best = f;
        res.placement = p;
      }
    }
    res.hpwl = ev.hpwl(res.placement);
  }
  res.t_w = seconds_since(wall0);
  return res;
}

BenchFamily detect_family(int module_count) {
  return module_count <= 49 ? BenchFamily::Mcnc : BenchFamily::Gsrc;
}

} // namespace csf
