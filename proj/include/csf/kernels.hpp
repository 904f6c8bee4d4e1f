#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csf/geometry.hpp"
#include "csf/rng.hpp"

namespace csf::kern {

// SoA view of a placement: centers plus effective half-dimensions.
struct PairView {
  int n = 0;
  const double* x = nullptr;
  const double* y = nullptr;
  const double* hw = nullptr; // effective half-width per module
  const double* hh = nullptr; // effective half-height per module
};

// Flattened net topology (module pins CSR + fixed terminal extents).
struct NetsView {
  int net_count = 0;
  const std::int32_t* offsets = nullptr;
  const std::int32_t* pin_module = nullptr;
  const double* tmin_x = nullptr;
  const double* tmax_x = nullptr;
  const double* tmin_y = nullptr;
  const double* tmax_y = nullptr;
  const std::int32_t* cnt_tmin_x = nullptr;
  const std::int32_t* cnt_tmax_x = nullptr;
  const std::int32_t* cnt_tmin_y = nullptr;
  const std::int32_t* cnt_tmax_y = nullptr;
};

// Reusable scratch for the pairwise kernels (one per evaluating thread).
struct Workspace {
  std::vector<std::int32_t> order; // module indices sorted by center x
  std::vector<double> sx, sy, shw, shh;
  std::vector<double> reach; // suffix max of shw, for the sweep cut-off

  void prepare(const PairView& view);
};

// Branch-condition tolerance of the random subgradient scheme: a point within
// this distance of a breakpoint draws uniformly between the adjacent slopes.
inline constexpr double kBreakTol = 1e-12;

// One kernel family. All subgradient entry points *accumulate* weighted
// slopes into gx/gy; the caller zeroes the buffers. Scalar and SIMD variants
// are bit-identical: same pair/net visit order, same in-order accumulation,
// and identical rng consumption (one draw per tie or breakpoint event).
struct KernelOps {
  const char* name;

  double (*hpwl)(const NetsView& nets, const double* x, const double* y);
  void (*hpwl_subgrad)(const NetsView& nets, const double* x, const double* y,
                       double alpha, Rng& rng, double* gx, double* gy);

  double (*overlap)(const PairView& view, Workspace& ws);
  void (*overlap_subgrad)(const PairView& view, double lambda, Rng& rng,
                          Workspace& ws, double* gx, double* gy);

  double (*boundary)(const PairView& view, double outline_w, double outline_h);
  void (*boundary_subgrad)(const PairView& view, double outline_w, double outline_h,
                           double mu, Rng& rng, double* gx, double* gy);
};

const KernelOps& scalar_kernels();
#if CSF_HAVE_AVX2_TU
const KernelOps& avx2_kernels();
#endif

// Runtime selection. "auto" picks the widest variant the CPU supports; the
// CSF_KERNEL environment variable ("scalar", "avx2", "auto") overrides it.
const KernelOps& select_kernels(const std::string& which);
const KernelOps& active_kernels();
void set_active_kernels(const std::string& which); // throws on unknown/unsupported
std::vector<std::string> available_kernel_names();

} // namespace csf::kern
