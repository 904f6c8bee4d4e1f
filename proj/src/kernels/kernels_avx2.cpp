// AVX2 variants of the evaluation kernels. They visit pairs/nets/modules in
// the same order as the scalar kernels, accumulate extracted lanes in that
// order, and defer every breakpoint/tie event to the shared scalar helpers,
// so results and rng consumption are bit-identical to the scalar variants.

#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "csf/kernels.hpp"
#include "detail.hpp"

namespace csf::kern {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline __m256d abs_pd(__m256d v) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffll));
  return _mm256_and_pd(v, mask);
}

// Eq.-style three-branch overlap value, vectorized: dx, half-extents.
inline __m256d overlap_value_pd(__m256d dx, __m256d hwi, __m256d hwj) {
  const __m256d lo = abs_pd(_mm256_sub_pd(hwi, hwj));
  const __m256d hi = _mm256_add_pd(hwi, hwj);
  const __m256d full = _mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_min_pd(hwi, hwj));
  const __m256d flank = _mm256_sub_pd(hi, dx);
  const __m256d in_full = _mm256_cmp_pd(dx, lo, _CMP_LE_OQ);
  const __m256d in_flank = _mm256_cmp_pd(dx, hi, _CMP_LE_OQ);
  __m256d v = _mm256_and_pd(in_flank, flank);
  v = _mm256_blendv_pd(v, full, in_full);
  return v;
}

double hpwl_avx2(const NetsView& nets, const double* x, const double* y) {
  double total = 0.0;
  for (int e = 0; e < nets.net_count; ++e) {
    const std::int32_t* pins = nets.pin_module + nets.offsets[e];
    const int npins = nets.offsets[e + 1] - nets.offsets[e];
    double lox = nets.tmin_x[e], hix = nets.tmax_x[e];
    double loy = nets.tmin_y[e], hiy = nets.tmax_y[e];
    int p = 0;
    if (npins >= 4) {
      __m256d vlox = _mm256_set1_pd(lox), vhix = _mm256_set1_pd(hix);
      __m256d vloy = _mm256_set1_pd(loy), vhiy = _mm256_set1_pd(hiy);
      for (; p + 4 <= npins; p += 4) {
        const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(pins + p));
        const __m256d vx = _mm256_i32gather_pd(x, idx, 8);
        const __m256d vy = _mm256_i32gather_pd(y, idx, 8);
        vlox = _mm256_min_pd(vlox, vx);
        vhix = _mm256_max_pd(vhix, vx);
        vloy = _mm256_min_pd(vloy, vy);
        vhiy = _mm256_max_pd(vhiy, vy);
      }
      alignas(32) double t[4];
      _mm256_store_pd(t, vlox);
      lox = std::min(std::min(t[0], t[1]), std::min(t[2], t[3]));
      _mm256_store_pd(t, vhix);
      hix = std::max(std::max(t[0], t[1]), std::max(t[2], t[3]));
      _mm256_store_pd(t, vloy);
      loy = std::min(std::min(t[0], t[1]), std::min(t[2], t[3]));
      _mm256_store_pd(t, vhiy);
      hiy = std::max(std::max(t[0], t[1]), std::max(t[2], t[3]));
    }
    for (; p < npins; ++p) {
      const int m = pins[p];
      lox = std::min(lox, x[m]);
      hix = std::max(hix, x[m]);
      loy = std::min(loy, y[m]);
      hiy = std::max(hiy, y[m]);
    }
    if (hix < lox || hiy < loy) continue;
    total += (hix - lox) + (hiy - loy);
  }
  return total;
}

// Extreme value and exact-tie count over a pin slice, one axis.
inline void axis_stats(const double* coord, const std::int32_t* pins, int npins,
                       double& mmax, int& cmax, double& mmin, int& cmin) {
  mmax = -kInf;
  mmin = kInf;
  int p = 0;
  if (npins >= 4) {
    __m256d vmax = _mm256_set1_pd(-kInf), vmin = _mm256_set1_pd(kInf);
    for (; p + 4 <= npins; p += 4) {
      const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(pins + p));
      const __m256d v = _mm256_i32gather_pd(coord, idx, 8);
      vmax = _mm256_max_pd(vmax, v);
      vmin = _mm256_min_pd(vmin, v);
    }
    alignas(32) double t[4];
    _mm256_store_pd(t, vmax);
    mmax = std::max(std::max(t[0], t[1]), std::max(t[2], t[3]));
    _mm256_store_pd(t, vmin);
    mmin = std::min(std::min(t[0], t[1]), std::min(t[2], t[3]));
  }
  for (int q = p; q < npins; ++q) {
    mmax = std::max(mmax, coord[pins[q]]);
    mmin = std::min(mmin, coord[pins[q]]);
  }
  cmax = 0;
  cmin = 0;
  const __m256d bmax = _mm256_set1_pd(mmax), bmin = _mm256_set1_pd(mmin);
  int q = 0;
  for (; q + 4 <= npins; q += 4) {
    const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(pins + q));
    const __m256d v = _mm256_i32gather_pd(coord, idx, 8);
    cmax += __builtin_popcount(_mm256_movemask_pd(_mm256_cmp_pd(v, bmax, _CMP_EQ_OQ)));
    cmin += __builtin_popcount(_mm256_movemask_pd(_mm256_cmp_pd(v, bmin, _CMP_EQ_OQ)));
  }
  for (; q < npins; ++q) {
    cmax += coord[pins[q]] == mmax;
    cmin += coord[pins[q]] == mmin;
  }
}

void hpwl_subgrad_avx2(const NetsView& nets, const double* x, const double* y,
                       double alpha, Rng& rng, double* gx, double* gy) {
  for (int e = 0; e < nets.net_count; ++e) {
    const std::int32_t* pins = nets.pin_module + nets.offsets[e];
    const int npins = nets.offsets[e + 1] - nets.offsets[e];
    if (npins == 0) continue;
    double mmax, mmin;
    int cmax, cmin;
    axis_stats(x, pins, npins, mmax, cmax, mmin, cmin);
    detail::hpwl_axis_pick(x, pins, npins, mmax, cmax, mmin, cmin,
                           nets.tmin_x[e], nets.tmax_x[e],
                           nets.cnt_tmin_x[e], nets.cnt_tmax_x[e], alpha, rng, gx);
    axis_stats(y, pins, npins, mmax, cmax, mmin, cmin);
    detail::hpwl_axis_pick(y, pins, npins, mmax, cmax, mmin, cmin,
                           nets.tmin_y[e], nets.tmax_y[e],
                           nets.cnt_tmin_y[e], nets.cnt_tmax_y[e], alpha, rng, gy);
  }
}

double overlap_avx2(const PairView& view, Workspace& ws) {
  ws.prepare(view);
  const int n = view.n;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = ws.sx[i], yi = ws.sy[i], hwi = ws.shw[i], hhi = ws.shh[i];
    const __m256d vxi = _mm256_set1_pd(xi), vyi = _mm256_set1_pd(yi);
    const __m256d vhwi = _mm256_set1_pd(hwi), vhhi = _mm256_set1_pd(hhi);
    int j = i + 1;
    for (; j + 4 <= n; j += 4) {
      // Window cut-off: beyond hwi + reach the whole remaining range is
      // disjoint in x (reach is a suffix max, so the test is monotone).
      if (ws.sx[j] - xi > hwi + ws.reach[j] + 1e-9) break;
      const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(&ws.sx[j]), vxi);
      const __m256d dy = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(&ws.sy[j]), vyi));
      const __m256d ox = overlap_value_pd(dx, vhwi, _mm256_loadu_pd(&ws.shw[j]));
      const __m256d oy = overlap_value_pd(dy, vhhi, _mm256_loadu_pd(&ws.shh[j]));
      alignas(32) double d[4];
      _mm256_store_pd(d, _mm256_mul_pd(ox, oy));
      total += d[0];
      total += d[1];
      total += d[2];
      total += d[3];
    }
    for (; j < n; ++j) {
      const double dx = ws.sx[j] - xi;
      if (dx > hwi + ws.reach[j] + 1e-9) break;
      const double ox = detail::overlap_value(dx, hwi, ws.shw[j]);
      const double oy = detail::overlap_value(std::fabs(ws.sy[j] - yi), hhi, ws.shh[j]);
      total += ox * oy;
    }
  }
  return total;
}

void overlap_subgrad_avx2(const PairView& view, double lambda, Rng& rng,
                          Workspace& ws, double* gx, double* gy) {
  ws.prepare(view);
  const int n = view.n;
  const __m256d vtol = _mm256_set1_pd(kBreakTol);
  const __m256d vzero = _mm256_setzero_pd();
  const __m256d vlambda = _mm256_set1_pd(lambda);
  for (int i = 0; i < n; ++i) {
    const double xi = ws.sx[i], yi = ws.sy[i], hwi = ws.shw[i], hhi = ws.shh[i];
    const int oi = ws.order[i];
    const __m256d vxi = _mm256_set1_pd(xi), vyi = _mm256_set1_pd(yi);
    const __m256d vhwi = _mm256_set1_pd(hwi), vhhi = _mm256_set1_pd(hhi);
    int j = i + 1;
    for (; j + 4 <= n; j += 4) {
      if (ws.sx[j] - xi > hwi + ws.reach[j] + 1e-9) break;
      const __m256d xj = _mm256_loadu_pd(&ws.sx[j]);
      const __m256d yj = _mm256_loadu_pd(&ws.sy[j]);
      const __m256d hwj = _mm256_loadu_pd(&ws.shw[j]);
      const __m256d hhj = _mm256_loadu_pd(&ws.shh[j]);
      const __m256d diffx = _mm256_sub_pd(vxi, xj);
      const __m256d diffy = _mm256_sub_pd(vyi, yj);
      const __m256d dx = abs_pd(diffx);
      const __m256d dy = abs_pd(diffy);

      const __m256d lox = abs_pd(_mm256_sub_pd(vhwi, hwj));
      const __m256d hix = _mm256_add_pd(vhwi, hwj);
      const __m256d loy = abs_pd(_mm256_sub_pd(vhhi, hhj));
      const __m256d hiy = _mm256_add_pd(vhhi, hhj);

      const __m256d ox = overlap_value_pd(dx, vhwi, hwj);
      const __m256d oy = overlap_value_pd(dy, vhhi, hhj);

      // Breakpoint lanes (with a live orthogonal overlap) take the shared
      // scalar path so rng draws match the scalar kernel exactly.
      const __m256d nearx = _mm256_or_pd(
          _mm256_cmp_pd(abs_pd(_mm256_sub_pd(dx, lox)), vtol, _CMP_LE_OQ),
          _mm256_cmp_pd(abs_pd(_mm256_sub_pd(dx, hix)), vtol, _CMP_LE_OQ));
      const __m256d neary = _mm256_or_pd(
          _mm256_cmp_pd(abs_pd(_mm256_sub_pd(dy, loy)), vtol, _CMP_LE_OQ),
          _mm256_cmp_pd(abs_pd(_mm256_sub_pd(dy, hiy)), vtol, _CMP_LE_OQ));
      const __m256d livex = _mm256_cmp_pd(oy, vzero, _CMP_GT_OQ);
      const __m256d livey = _mm256_cmp_pd(ox, vzero, _CMP_GT_OQ);
      const int special = _mm256_movemask_pd(_mm256_or_pd(_mm256_and_pd(nearx, livex),
                                                          _mm256_and_pd(neary, livey)));

      // Smooth-lane slopes: -sign(diff) on the linear flank, 0 elsewhere.
      auto flank_slope = [&](__m256d diff, __m256d dabs, __m256d lo, __m256d hi) {
        const __m256d pos = _mm256_cmp_pd(diff, vzero, _CMP_GT_OQ);
        const __m256d neg = _mm256_cmp_pd(diff, vzero, _CMP_LT_OQ);
        __m256d s = _mm256_and_pd(pos, _mm256_set1_pd(1.0));
        s = _mm256_blendv_pd(s, _mm256_set1_pd(-1.0), neg);
        const __m256d in = _mm256_and_pd(_mm256_cmp_pd(dabs, lo, _CMP_GT_OQ),
                                         _mm256_cmp_pd(dabs, hi, _CMP_LE_OQ));
        return _mm256_and_pd(in, _mm256_sub_pd(vzero, s));
      };
      const __m256d cx = _mm256_mul_pd(_mm256_mul_pd(vlambda, flank_slope(diffx, dx, lox, hix)), oy);
      const __m256d cy = _mm256_mul_pd(_mm256_mul_pd(vlambda, flank_slope(diffy, dy, loy, hiy)), ox);

      alignas(32) double cxl[4], cyl[4];
      _mm256_store_pd(cxl, cx);
      _mm256_store_pd(cyl, cy);
      for (int lane = 0; lane < 4; ++lane) {
        const int jj = j + lane;
        const int oj = ws.order[jj];
        if (special & (1 << lane)) {
          detail::overlap_subgrad_pair(xi, yi, hwi, hhi,
                                       ws.sx[jj], ws.sy[jj], ws.shw[jj], ws.shh[jj],
                                       lambda, rng, gx[oi], gy[oi], gx[oj], gy[oj]);
        } else {
          gx[oi] += cxl[lane];
          gx[oj] -= cxl[lane];
          gy[oi] += cyl[lane];
          gy[oj] -= cyl[lane];
        }
      }
    }
    for (; j < n; ++j) {
      if (ws.sx[j] - xi > hwi + ws.reach[j] + 1e-9) break;
      const int oj = ws.order[j];
      detail::overlap_subgrad_pair(xi, yi, hwi, hhi,
                                   ws.sx[j], ws.sy[j], ws.shw[j], ws.shh[j],
                                   lambda, rng, gx[oi], gy[oi], gx[oj], gy[oj]);
    }
  }
}

double boundary_avx2(const PairView& view, double w, double h) {
  const int n = view.n;
  const __m256d vw = _mm256_set1_pd(w), vh = _mm256_set1_pd(h);
  const __m256d vzero = _mm256_setzero_pd();
  double total = 0.0;
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(view.x + i);
    const __m256d y = _mm256_loadu_pd(view.y + i);
    const __m256d hw = _mm256_loadu_pd(view.hw + i);
    const __m256d hh = _mm256_loadu_pd(view.hh + i);
    const __m256d b1x = _mm256_max_pd(vzero, _mm256_sub_pd(hw, x));
    const __m256d b2x = _mm256_max_pd(vzero, _mm256_sub_pd(_mm256_add_pd(x, hw), vw));
    const __m256d b1y = _mm256_max_pd(vzero, _mm256_sub_pd(hh, y));
    const __m256d b2y = _mm256_max_pd(vzero, _mm256_sub_pd(_mm256_add_pd(y, hh), vh));
    alignas(32) double t[4];
    _mm256_store_pd(t, _mm256_add_pd(_mm256_add_pd(b1x, b2x), _mm256_add_pd(b1y, b2y)));
    total += t[0];
    total += t[1];
    total += t[2];
    total += t[3];
  }
  for (; i < n; ++i) {
    total += detail::boundary_terms(view.x[i], view.y[i], view.hw[i], view.hh[i], w, h);
  }
  return total;
}

void boundary_subgrad_avx2(const PairView& view, double w, double h,
                           double mu, Rng& rng, double* gx, double* gy) {
  const int n = view.n;
  const __m256d vtol = _mm256_set1_pd(kBreakTol);
  const __m256d vzero = _mm256_setzero_pd();
  const __m256d vone = _mm256_set1_pd(1.0);
  const __m256d vmu = _mm256_set1_pd(mu);
  const __m256d vw = _mm256_set1_pd(w), vh = _mm256_set1_pd(h);
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(view.x + i);
    const __m256d y = _mm256_loadu_pd(view.y + i);
    const __m256d hw = _mm256_loadu_pd(view.hw + i);
    const __m256d hh = _mm256_loadu_pd(view.hh + i);
    const __m256d e1x = _mm256_sub_pd(hw, x);
    const __m256d e2x = _mm256_sub_pd(_mm256_add_pd(x, hw), vw);
    const __m256d e1y = _mm256_sub_pd(hh, y);
    const __m256d e2y = _mm256_sub_pd(_mm256_add_pd(y, hh), vh);

    __m256d kink = _mm256_cmp_pd(abs_pd(e1x), vtol, _CMP_LE_OQ);
    kink = _mm256_or_pd(kink, _mm256_cmp_pd(abs_pd(e2x), vtol, _CMP_LE_OQ));
    kink = _mm256_or_pd(kink, _mm256_cmp_pd(abs_pd(e1y), vtol, _CMP_LE_OQ));
    kink = _mm256_or_pd(kink, _mm256_cmp_pd(abs_pd(e2y), vtol, _CMP_LE_OQ));
    const int special = _mm256_movemask_pd(kink);

    auto active = [&](__m256d e) { return _mm256_and_pd(_mm256_cmp_pd(e, vzero, _CMP_GT_OQ), vone); };
    // Mirror the scalar op sequence: g -= mu*s1; g += mu*s2.
    __m256d gxv = _mm256_loadu_pd(gx + i);
    gxv = _mm256_sub_pd(gxv, _mm256_mul_pd(vmu, active(e1x)));
    gxv = _mm256_add_pd(gxv, _mm256_mul_pd(vmu, active(e2x)));
    __m256d gyv = _mm256_loadu_pd(gy + i);
    gyv = _mm256_sub_pd(gyv, _mm256_mul_pd(vmu, active(e1y)));
    gyv = _mm256_add_pd(gyv, _mm256_mul_pd(vmu, active(e2y)));

    if (special == 0) {
      _mm256_storeu_pd(gx + i, gxv);
      _mm256_storeu_pd(gy + i, gyv);
    } else {
      alignas(32) double gxl[4], gyl[4];
      _mm256_store_pd(gxl, gxv);
      _mm256_store_pd(gyl, gyv);
      for (int lane = 0; lane < 4; ++lane) {
        if (special & (1 << lane)) {
          detail::boundary_subgrad_one(view.x[i + lane], view.y[i + lane],
                                       view.hw[i + lane], view.hh[i + lane],
                                       w, h, mu, rng, gx[i + lane], gy[i + lane]);
        } else {
          gx[i + lane] = gxl[lane];
          gy[i + lane] = gyl[lane];
        }
      }
    }
  }
  for (; i < n; ++i) {
    detail::boundary_subgrad_one(view.x[i], view.y[i], view.hw[i], view.hh[i],
                                 w, h, mu, rng, gx[i], gy[i]);
  }
}

} // namespace

const KernelOps& avx2_kernels() {
  static const KernelOps ops = {
      "avx2",
      hpwl_avx2,
      hpwl_subgrad_avx2,
      overlap_avx2,
      overlap_subgrad_avx2,
      boundary_avx2,
      boundary_subgrad_avx2,
  };
  return ops;
}

} // namespace csf::kern
