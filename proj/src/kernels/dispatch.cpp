#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "csf/kernels.hpp"

namespace csf::kern {

void Workspace::prepare(const PairView& view) {
  const int n = view.n;
  order.resize(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (view.x[a] != view.x[b]) return view.x[a] < view.x[b];
    return a < b;
  });
  sx.resize(n);
  sy.resize(n);
  shw.resize(n);
  shh.resize(n);
  reach.resize(n);
  for (int i = 0; i < n; ++i) {
    const int m = order[i];
    sx[i] = view.x[m];
    sy[i] = view.y[m];
    shw[i] = view.hw[m];
    shh[i] = view.hh[m];
  }
  double run = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    run = std::max(run, shw[i]);
    reach[i] = run;
  }
}

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelOps* resolve(const std::string& which) {
  if (which == "scalar") return &scalar_kernels();
#if CSF_HAVE_AVX2_TU
  if (which == "avx2") {
    if (!cpu_has_avx2()) return nullptr;
    return &avx2_kernels();
  }
#endif
  if (which == "auto" || which.empty()) {
#if CSF_HAVE_AVX2_TU
    if (cpu_has_avx2()) return &avx2_kernels();
#endif
    return &scalar_kernels();
  }
  return nullptr;
}

const KernelOps*& active_slot() {
  static const KernelOps* active = [] {
    const char* env = std::getenv("CSF_KERNEL");
    const KernelOps* ops = resolve(env ? env : "auto");
    return ops ? ops : &scalar_kernels();
  }();
  return active;
}

} // namespace

const KernelOps& select_kernels(const std::string& which) {
  const KernelOps* ops = resolve(which);
  if (!ops) throw std::invalid_argument("unknown or unsupported kernel variant: " + which);
  return *ops;
}

const KernelOps& active_kernels() { return *active_slot(); }

void set_active_kernels(const std::string& which) { active_slot() = &select_kernels(which); }

std::vector<std::string> available_kernel_names() {
  std::vector<std::string> names = {"scalar"};
#if CSF_HAVE_AVX2_TU
  if (cpu_has_avx2()) names.push_back("avx2");
#endif
  return names;
}

} // namespace csf::kern
