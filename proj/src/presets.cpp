#include "csf/csf_driver.hpp"

namespace csf {
namespace {

bool ami33_like(const std::string& instance, int module_count) {
  if (instance.find("ami33") != std::string::npos) return true;
  if (instance.find("ami49") != std::string::npos) return false;
  return module_count <= 40;
}

} // namespace

CsfConfig make_config(Mode mode, LegalizerKind legalizer, BenchFamily family,
                      const std::string& instance, int module_count, std::uint64_t seed) {
  CsfConfig cfg;
  cfg.mode = mode;
  cfg.legalizer = legalizer;
  cfg.seed = seed;
  cfg.population = 5;
  cfg.t_max = 10;
  cfg.rotate_prob = 0.3;
  cfg.cg_n_max = 20;

  const bool gp_q = mode != Mode::cc;
  const bool la_q = mode == Mode::qq;
  const bool mcnc = family == BenchFamily::Mcnc;
  const bool small = ami33_like(instance, module_count);

  GlobalConfig& g = cfg.global;
  g.weights.alpha = 1.0;
  g.weights.lambda = 20.0;
  g.weights.mu = mcnc ? 10.0 : 100.0;
  g.escalation_q = 1.3;
  g.feasibility_divisor = mcnc ? 10.0 : 100.0;
  g.use_controller = gp_q;
  if (gp_q) {
    g.k_t = mcnc ? 10 : 40;
    g.k_max = mcnc ? 50 : 200;
    g.actions = mcnc ? (small ? std::vector<double>{80, 100, 120, 140, 160}
                              : std::vector<double>{130, 180, 220, 270, 330})
                     : std::vector<double>{8, 12, 15, 20, 25};
  } else {
    g.k_max = 50;
    g.fixed_c = mcnc ? 1000.0 : 100.0;
  }

  LaCsaqConfig& l = cfg.la;
  l.lambda = 1.0;
  l.mu = 10.0;
  l.use_controller = la_q;
  if (la_q) {
    l.k_t = 100;
    l.k_max = mcnc ? 2000 : 5000;
    l.actions = mcnc ? (small ? std::vector<double>{1, 8, 30, 60, 90}
                              : std::vector<double>{10, 50, 100, 150, 200})
                     : std::vector<double>{0.1, 0.8, 5, 10, 20};
  } else {
    l.k_t = 100; // incumbent-rewind cadence; no controller in this mode
    l.k_max = 2000;
    l.fixed_c = mcnc ? 500.0 : 50.0;
  }
  return cfg;
}

} // namespace csf
