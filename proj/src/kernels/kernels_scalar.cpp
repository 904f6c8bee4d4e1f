#include <algorithm>
#include <limits>
#include <numeric>

#include "csf/kernels.hpp"
#include "detail.hpp"

namespace csf::kern {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double hpwl_scalar(const NetsView& nets, const double* x, const double* y) {
  double total = 0.0;
  for (int e = 0; e < nets.net_count; ++e) {
    double lox = nets.tmin_x[e], hix = nets.tmax_x[e];
    double loy = nets.tmin_y[e], hiy = nets.tmax_y[e];
    for (std::int32_t p = nets.offsets[e]; p < nets.offsets[e + 1]; ++p) {
      const int m = nets.pin_module[p];
      lox = std::min(lox, x[m]);
      hix = std::max(hix, x[m]);
      loy = std::min(loy, y[m]);
      hiy = std::max(hiy, y[m]);
    }
    if (hix < lox || hiy < loy) continue; // cannot happen for validated nets
    total += (hix - lox) + (hiy - loy);
  }
  return total;
}

void hpwl_axis_subgrad(const double* coord, const std::int32_t* pins, int npins,
                       double tmin, double tmax, int cnt_tmin, int cnt_tmax,
                       double alpha, Rng& rng, double* g) {
  double mmax = -kInf, mmin = kInf;
  int cmax = 0, cmin = 0;
  for (int p = 0; p < npins; ++p) {
    const double v = coord[pins[p]];
    if (v > mmax) { mmax = v; cmax = 1; } else if (v == mmax) { ++cmax; }
    if (v < mmin) { mmin = v; cmin = 1; } else if (v == mmin) { ++cmin; }
  }
  detail::hpwl_axis_pick(coord, pins, npins, mmax, cmax, mmin, cmin,
                         tmin, tmax, cnt_tmin, cnt_tmax, alpha, rng, g);
}

void hpwl_subgrad_scalar(const NetsView& nets, const double* x, const double* y,
                         double alpha, Rng& rng, double* gx, double* gy) {
  for (int e = 0; e < nets.net_count; ++e) {
    const std::int32_t* pins = nets.pin_module + nets.offsets[e];
    const int npins = nets.offsets[e + 1] - nets.offsets[e];
    if (npins == 0) continue; // terminal-only net: constant term
    hpwl_axis_subgrad(x, pins, npins, nets.tmin_x[e], nets.tmax_x[e],
                      nets.cnt_tmin_x[e], nets.cnt_tmax_x[e], alpha, rng, gx);
    hpwl_axis_subgrad(y, pins, npins, nets.tmin_y[e], nets.tmax_y[e],
                      nets.cnt_tmin_y[e], nets.cnt_tmax_y[e], alpha, rng, gy);
  }
}

double overlap_scalar(const PairView& view, Workspace& ws) {
  ws.prepare(view);
  const int n = view.n;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = ws.sx[i], yi = ws.sy[i], hwi = ws.shw[i], hhi = ws.shh[i];
    for (int j = i + 1; j < n; ++j) {
      const double dx = ws.sx[j] - xi;
      if (dx > hwi + ws.reach[j] + 1e-9) break;
      const double ox = detail::overlap_value(dx, hwi, ws.shw[j]);
      const double oy = detail::overlap_value(std::fabs(ws.sy[j] - yi), hhi, ws.shh[j]);
      total += ox * oy;
    }
  }
  return total;
}

void overlap_subgrad_scalar(const PairView& view, double lambda, Rng& rng,
                            Workspace& ws, double* gx, double* gy) {
  ws.prepare(view);
  const int n = view.n;
  for (int i = 0; i < n; ++i) {
    const double xi = ws.sx[i], yi = ws.sy[i], hwi = ws.shw[i], hhi = ws.shh[i];
    const int oi = ws.order[i];
    for (int j = i + 1; j < n; ++j) {
      if (ws.sx[j] - xi > hwi + ws.reach[j] + 1e-9) break;
      const int oj = ws.order[j];
      detail::overlap_subgrad_pair(xi, yi, hwi, hhi,
                                   ws.sx[j], ws.sy[j], ws.shw[j], ws.shh[j],
                                   lambda, rng, gx[oi], gy[oi], gx[oj], gy[oj]);
    }
  }
}

double boundary_scalar(const PairView& view, double w, double h) {
  double total = 0.0;
  for (int i = 0; i < view.n; ++i) {
    total += detail::boundary_terms(view.x[i], view.y[i], view.hw[i], view.hh[i], w, h);
  }
  return total;
}

void boundary_subgrad_scalar(const PairView& view, double w, double h,
                             double mu, Rng& rng, double* gx, double* gy) {
  for (int i = 0; i < view.n; ++i) {
    detail::boundary_subgrad_one(view.x[i], view.y[i], view.hw[i], view.hh[i],
                                 w, h, mu, rng, gx[i], gy[i]);
  }
}

} // namespace

const KernelOps& scalar_kernels() {
  static const KernelOps ops = {
      "scalar",
      hpwl_scalar,
      hpwl_subgrad_scalar,
      overlap_scalar,
      overlap_subgrad_scalar,
      boundary_scalar,
      boundary_subgrad_scalar,
  };
  return ops;
}

} // namespace csf::kern
