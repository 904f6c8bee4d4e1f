#pragma once

// Per-pair and per-module pieces shared by the scalar kernels and the AVX2
// breakpoint fixup paths. Keeping one definition guarantees both kernel
// families classify branches and consume rng draws identically.

#include <algorithm>
#include <cmath>

#include "csf/kernels.hpp"

namespace csf::kern::detail {

// Overlap length of two centered intervals (Eq.-style three-branch form).
// dx = |c_i - c_j|, hwi/hwj = half extents.
inline double overlap_value(double dx, double hwi, double hwj) {
  const double lo = std::fabs(hwi - hwj);
  const double hi = hwi + hwj;
  if (dx <= lo) return 2.0 * std::min(hwi, hwj);
  if (dx <= hi) return hi - dx;
  return 0.0;
}

// Subgradient element of the overlap length wrt the first coordinate.
// other_olap is the overlap value of the orthogonal axis; when it is zero the
// product term contributes nothing, so no slope is needed and no rng draw is
// consumed. At a breakpoint (within kBreakTol) one draw picks uniformly
// between the two adjacent branch slopes.
inline double overlap_slope(double diff, double hwi, double hwj, double other_olap, Rng& rng) {
  if (other_olap <= 0.0) return 0.0;
  const double dx = std::fabs(diff);
  const double lo = std::fabs(hwi - hwj);
  const double hi = hwi + hwj;
  const double s = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
  const bool near_inner = std::fabs(dx - lo) <= kBreakTol;
  const bool near_outer = std::fabs(dx - hi) <= kBreakTol;
  if (near_inner) {
    if (lo <= kBreakTol) {
      // Apex of |diff| at equal extents: slopes -1 / +1 meet.
      return rng.below(2) == 0 ? 1.0 : -1.0;
    }
    // Kink between the flat top and the linear flank.
    return rng.below(2) == 0 ? -s : 0.0;
  }
  if (near_outer) {
    // Kink between the linear flank and the disjoint region.
    return rng.below(2) == 0 ? -s : 0.0;
  }
  if (dx <= lo) return 0.0;
  if (dx <= hi) return -s;
  return 0.0;
}

// One directional boundary term max(0, excess). Returns the slope element
// (sign +-1 selected by the caller); draws at the kink.
inline double boundary_slope(double excess, Rng& rng) {
  if (std::fabs(excess) <= kBreakTol) return rng.below(2) == 0 ? 1.0 : 0.0;
  return excess > 0.0 ? 1.0 : 0.0;
}

// Accumulates the four boundary terms of module i; the eval grouping
// ((b1x + b2x) + (b1y + b2y)) is fixed so every kernel sums identically.
inline double boundary_terms(double x, double y, double hw, double hh, double w, double h) {
  const double b1x = std::max(0.0, hw - x);
  const double b2x = std::max(0.0, x + hw - w);
  const double b1y = std::max(0.0, hh - y);
  const double b2y = std::max(0.0, y + hh - h);
  return (b1x + b2x) + (b1y + b2y);
}

inline void boundary_subgrad_one(double x, double y, double hw, double hh, double w, double h,
                                 double mu, Rng& rng, double& gx, double& gy) {
  gx -= mu * boundary_slope(hw - x, rng);
  gx += mu * boundary_slope(x + hw - w, rng);
  gy -= mu * boundary_slope(hh - y, rng);
  gy += mu * boundary_slope(y + hh - h, rng);
}

// Finishes one axis of a net's HPWL subgradient once the module-pin extremes
// (mmax/cmax, mmin/cmin) are known. Tie handling draws at most once per side:
// the argmax/argmin is picked uniformly among the exactly-tied pins (fixed
// tie order: module pins in pin order, then terminals). Terminals absorb no
// gradient. A zero-extent net picks two distinct pins when it has at least
// two. Shared so the scalar and SIMD kernels consume rng draws identically.
inline void hpwl_axis_pick(const double* coord, const std::int32_t* pins, int npins,
                           double mmax, int cmax, double mmin, int cmin,
                           double tmin, double tmax, int cnt_tmin, int cnt_tmax,
                           double alpha, Rng& rng, double* g) {
  const double big = std::max(mmax, tmax);
  const double low = std::min(mmin, tmin);

  auto nth_module_at = [&](double v, int nth) {
    int seen = 0;
    for (int p = 0; p < npins; ++p) {
      if (coord[pins[p]] == v && seen++ == nth) return pins[p];
    }
    return -1;
  };

  if (big == low) {
    // All pins coincide.
    const int q = npins + (tmax == big ? cnt_tmax : 0);
    if (q < 2) return;
    const int a = static_cast<int>(rng.below(q));
    int b = static_cast<int>(rng.below(q - 1));
    if (b >= a) ++b;
    if (a < npins) g[pins[a]] += alpha;
    if (b < npins) g[pins[b]] -= alpha;
    return;
  }

  const int mtop = (mmax == big) ? cmax : 0;
  const int ktop = mtop + ((tmax == big) ? cnt_tmax : 0);
  if (ktop >= 1) {
    int r = (ktop == 1) ? 0 : static_cast<int>(rng.below(ktop));
    if (r < mtop) g[nth_module_at(big, r)] += alpha;
  }
  const int mbot = (mmin == low) ? cmin : 0;
  const int kbot = mbot + ((tmin == low) ? cnt_tmin : 0);
  if (kbot >= 1) {
    int r = (kbot == 1) ? 0 : static_cast<int>(rng.below(kbot));
    if (r < mbot) g[nth_module_at(low, r)] -= alpha;
  }
}

// Shared subgradient step for one module pair (sorted order i before j).
// Consumes draws in a fixed order: x side, then y side.
inline void overlap_subgrad_pair(double xi, double yi, double hwi, double hhi,
                                 double xj, double yj, double hwj, double hhj,
                                 double lambda, Rng& rng,
                                 double& gxi, double& gyi, double& gxj, double& gyj) {
  const double ox = overlap_value(std::fabs(xi - xj), hwi, hwj);
  const double oy = overlap_value(std::fabs(yi - yj), hhi, hhj);
  const double sx = overlap_slope(xi - xj, hwi, hwj, oy, rng);
  const double sy = overlap_slope(yi - yj, hhi, hhj, ox, rng);
  const double cx = lambda * sx * oy;
  const double cy = lambda * sy * ox;
  gxi += cx;
  gxj -= cx;
  gyi += cy;
  gyj -= cy;
}

} // namespace csf::kern::detail
