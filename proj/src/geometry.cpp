#include "csf/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace csf {

Outline generate_outline(double total_area, double aspect, double gamma) {
  if (!(total_area > 0.0)) throw std::invalid_argument("outline: total area must be positive");
  if (!(aspect > 0.0)) throw std::invalid_argument("outline: aspect ratio must be positive");
  if (!(gamma >= 0.0)) throw std::invalid_argument("outline: whitespace ratio must be non-negative");
  Outline o;
  o.width = std::sqrt((1.0 + gamma) * total_area / aspect);
  o.height = std::sqrt((1.0 + gamma) * total_area * aspect);
  o.gamma = gamma;
  o.aspect = aspect;
  o.generated = true;
  return o;
}

void Netlist::finalize() {
  const int n = module_count();
  for (int i = 0; i < n; ++i) {
    const ModuleSpec& m = modules[i];
    if (m.id != i) throw std::invalid_argument("netlist: module ids must be dense 0..n-1");
    if (!(m.width > 0.0) || !(m.height > 0.0))
      throw std::invalid_argument("netlist: module '" + m.name + "' has non-positive dimensions");
  }
  for (const Terminal& t : terminals) {
    if (!std::isfinite(t.x) || !std::isfinite(t.y))
      throw std::invalid_argument("netlist: terminal '" + t.name + "' has non-finite coordinates");
  }

  total_area = 0.0;
  for (const ModuleSpec& m : modules) total_area += m.area();

  const double inf = std::numeric_limits<double>::infinity();
  topo.offsets.clear();
  topo.pin_module.clear();
  topo.offsets.reserve(nets.size() + 1);
  topo.offsets.push_back(0);
  topo.tmin_x.assign(nets.size(), inf);
  topo.tmax_x.assign(nets.size(), -inf);
  topo.tmin_y.assign(nets.size(), inf);
  topo.tmax_y.assign(nets.size(), -inf);
  topo.cnt_tmin_x.assign(nets.size(), 0);
  topo.cnt_tmax_x.assign(nets.size(), 0);
  topo.cnt_tmin_y.assign(nets.size(), 0);
  topo.cnt_tmax_y.assign(nets.size(), 0);

  for (std::size_t e = 0; e < nets.size(); ++e) {
    const Net& net = nets[e];
    if (net.degree() == 0) throw std::invalid_argument("netlist: empty net");
    std::unordered_set<int> seen;
    for (int m : net.module_pins) {
      if (m < 0 || m >= n) throw std::invalid_argument("netlist: net references unknown module id");
      if (!seen.insert(m).second)
        throw std::invalid_argument("netlist: duplicate module pin in net");
      topo.pin_module.push_back(m);
    }
    topo.offsets.push_back(static_cast<std::int32_t>(topo.pin_module.size()));

    for (int t : net.terminal_pins) {
      if (t < 0 || t >= static_cast<int>(terminals.size()))
        throw std::invalid_argument("netlist: net references unknown terminal id");
      const Terminal& term = terminals[t];
      auto fold = [](double v, double& mn, double& mx, std::int32_t& cmn, std::int32_t& cmx) {
        if (v < mn) { mn = v; cmn = 1; } else if (v == mn) { ++cmn; }
        if (v > mx) { mx = v; cmx = 1; } else if (v == mx) { ++cmx; }
      };
      fold(term.x, topo.tmin_x[e], topo.tmax_x[e], topo.cnt_tmin_x[e], topo.cnt_tmax_x[e]);
      fold(term.y, topo.tmin_y[e], topo.tmax_y[e], topo.cnt_tmin_y[e], topo.cnt_tmax_y[e]);
    }
  }
}

} // namespace csf
