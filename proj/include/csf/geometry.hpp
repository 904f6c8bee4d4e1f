#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace csf {

// A hard rectangular module. Dimensions are the unrotated width/height in um.
struct ModuleSpec {
  int id = -1;
  std::string name;
  double width = 0.0;
  double height = 0.0;

  double area() const { return width * height; }
};

// Fixed I/O pad. Never moves.
struct Terminal {
  std::string name;
  double x = 0.0;
  double y = 0.0;
};

struct Net {
  std::vector<int> module_pins;   // module ids
  std::vector<int> terminal_pins; // terminal ids

  std::size_t degree() const { return module_pins.size() + terminal_pins.size(); }
};

// Immutable problem instance. Call finalize() once after filling the fields;
// it validates the invariants and builds the flattened net topology used by
// the evaluation kernels.
struct Netlist {
  std::string name;
  std::vector<ModuleSpec> modules;
  std::vector<Terminal> terminals;
  std::vector<Net> nets;

  double total_area = 0.0; // sum of module areas, computed by finalize()

  // Flattened module-pin lists per net (CSR layout) plus per-net extents of
  // the fixed terminals, precomputed so the inner loops never touch Terminal.
  struct NetTopo {
    std::vector<std::int32_t> offsets;    // nets.size()+1
    std::vector<std::int32_t> pin_module; // module id per pin slot
    std::vector<double> tmin_x, tmax_x, tmin_y, tmax_y;
    std::vector<std::int32_t> cnt_tmin_x, cnt_tmax_x, cnt_tmin_y, cnt_tmax_y;
  };
  NetTopo topo;

  void finalize(); // throws std::invalid_argument on any broken invariant

  int module_count() const { return static_cast<int>(modules.size()); }
};

// Fixed die rectangle. gamma/aspect are only meaningful when generated.
struct Outline {
  double width = 0.0;  // W*
  double height = 0.0; // H*
  double gamma = 0.0;
  double aspect = 1.0;
  bool generated = false;
};

// W* = sqrt((1+gamma)*A/R), H* = sqrt((1+gamma)*A*R).
Outline generate_outline(double total_area, double aspect, double gamma);

// Decision variable: per-module center coordinates plus rotation bits.
struct Placement {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<std::uint8_t> rotated;

  static Placement sized(std::size_t n) {
    Placement p;
    p.x.assign(n, 0.0);
    p.y.assign(n, 0.0);
    p.rotated.assign(n, 0);
    return p;
  }

  std::size_t size() const { return x.size(); }
};

inline std::pair<double, double> effective_dims(const ModuleSpec& spec, bool rotated) {
  return rotated ? std::pair{spec.height, spec.width} : std::pair{spec.width, spec.height};
}

} // namespace csf
