// Compiled with -mavx2 -mfma; only entered after a runtime CPUID check.

#include "spherelab/kernels.hpp"

#if defined(SPHERELAB_HAVE_AVX2_TU) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>

#include "willmore_point.hpp"

namespace spherelab::kernels {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double energy_sum(const double* k, const double* ds, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d kk = _mm256_loadu_pd(k + i);
    const __m256d w = _mm256_fmadd_pd(kk, kk, one);
    acc = _mm256_fmadd_pd(w, _mm256_loadu_pd(ds + i), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += (1.0 + k[i] * k[i]) * ds[i];
  return s;
}

double weighted_sq_sum(const double* x, const double* y, const double* z, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i), vy = _mm256_loadu_pd(y + i), vz = _mm256_loadu_pd(z + i);
    __m256d sq = _mm256_mul_pd(vx, vx);
    sq = _mm256_fmadd_pd(vy, vy, sq);
    sq = _mm256_fmadd_pd(vz, vz, sq);
    acc = _mm256_fmadd_pd(sq, _mm256_loadu_pd(w + i), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += (x[i] * x[i] + y[i] * y[i] + z[i] * z[i]) * w[i];
  return s;
}

inline __m256d det3(__m256d a0, __m256d a1, __m256d a2, __m256d b0, __m256d b1, __m256d b2, __m256d c0,
                    __m256d c1, __m256d c2) {
  const __m256d m0 = _mm256_fmsub_pd(b1, c2, _mm256_mul_pd(b2, c1));
  const __m256d m1 = _mm256_fmsub_pd(b0, c2, _mm256_mul_pd(b2, c0));
  const __m256d m2 = _mm256_fmsub_pd(b0, c1, _mm256_mul_pd(b1, c0));
  return _mm256_fmadd_pd(a2, m2, _mm256_fmsub_pd(a0, m0, _mm256_mul_pd(a1, m1)));
}

double willmore_row(const WillmoreRowArgs& a) {
  const __m256d half = _mm256_set1_pd(0.5), quarter = _mm256_set1_pd(0.25), two = _mm256_set1_pd(2.0);
  const __m256d idu = _mm256_set1_pd(1.0 / a.du), idv = _mm256_set1_pd(1.0 / a.dv);
  const __m256d idu2 = _mm256_mul_pd(idu, idu), idv2 = _mm256_mul_pd(idv, idv), iduv = _mm256_mul_pd(idu, idv);
  const __m256d cell = _mm256_set1_pd(a.du * a.dv);
  const __m256d one = _mm256_set1_pd(1.0), zero = _mm256_setzero_pd();
  __m256d acc = _mm256_setzero_pd();
  bool degenerate = false;
  std::size_t v = 1;
  for (; v + 3 <= a.nf; v += 4) {
    __m256d X[4], Xu[4], Xv[4], Xuu[4], Xvv[4], Xuv[4];
    for (int k = 0; k < 4; ++k) {
      const __m256d c = _mm256_loadu_pd(a.cur.c[k] + v);
      const __m256d cp = _mm256_loadu_pd(a.cur.c[k] + v + 1);
      const __m256d cm = _mm256_loadu_pd(a.cur.c[k] + v - 1);
      const __m256d n0 = _mm256_loadu_pd(a.next.c[k] + v);
      const __m256d p0 = _mm256_loadu_pd(a.prev.c[k] + v);
      X[k] = c;
      Xu[k] = _mm256_mul_pd(_mm256_mul_pd(half, _mm256_sub_pd(n0, p0)), idu);
      Xv[k] = _mm256_mul_pd(_mm256_mul_pd(half, _mm256_sub_pd(cp, cm)), idv);
      Xuu[k] = _mm256_mul_pd(_mm256_add_pd(_mm256_fnmadd_pd(two, c, n0), p0), idu2);
      Xvv[k] = _mm256_mul_pd(_mm256_add_pd(_mm256_fnmadd_pd(two, c, cp), cm), idv2);
      const __m256d cross_diff =
          _mm256_add_pd(_mm256_sub_pd(_mm256_loadu_pd(a.next.c[k] + v + 1), _mm256_loadu_pd(a.next.c[k] + v - 1)),
                        _mm256_sub_pd(_mm256_loadu_pd(a.prev.c[k] + v - 1), _mm256_loadu_pd(a.prev.c[k] + v + 1)));
      Xuv[k] = _mm256_mul_pd(_mm256_mul_pd(quarter, cross_diff), iduv);
    }
    __m256d g11 = zero, g12 = zero, g22 = zero;
    for (int k = 0; k < 4; ++k) {
      g11 = _mm256_fmadd_pd(Xu[k], Xu[k], g11);
      g12 = _mm256_fmadd_pd(Xu[k], Xv[k], g12);
      g22 = _mm256_fmadd_pd(Xv[k], Xv[k], g22);
    }
    const __m256d detg = _mm256_fmsub_pd(g11, g22, _mm256_mul_pd(g12, g12));
    const __m256d nv[4] = {
        det3(X[1], X[2], X[3], Xu[1], Xu[2], Xu[3], Xv[1], Xv[2], Xv[3]),
        _mm256_sub_pd(zero, det3(X[0], X[2], X[3], Xu[0], Xu[2], Xu[3], Xv[0], Xv[2], Xv[3])),
        det3(X[0], X[1], X[3], Xu[0], Xu[1], Xu[3], Xv[0], Xv[1], Xv[3]),
        _mm256_sub_pd(zero, det3(X[0], X[1], X[2], Xu[0], Xu[1], Xu[2], Xv[0], Xv[1], Xv[2]))};
    __m256d nn2 = zero, h11 = zero, h12 = zero, h22 = zero;
    for (int k = 0; k < 4; ++k) {
      nn2 = _mm256_fmadd_pd(nv[k], nv[k], nn2);
      h11 = _mm256_fmadd_pd(Xuu[k], nv[k], h11);
      h12 = _mm256_fmadd_pd(Xuv[k], nv[k], h12);
      h22 = _mm256_fmadd_pd(Xvv[k], nv[k], h22);
    }
    const __m256d nn = _mm256_sqrt_pd(nn2);
    const __m256d bad = _mm256_or_pd(_mm256_cmp_pd(detg, zero, _CMP_NGT_UQ), _mm256_cmp_pd(nn, zero, _CMP_NGT_UQ));
    if (_mm256_movemask_pd(bad) != 0) degenerate = true;
    __m256d num = _mm256_mul_pd(g22, h11);
    num = _mm256_fnmadd_pd(_mm256_mul_pd(two, g12), h12, num);
    num = _mm256_fmadd_pd(g11, h22, num);
    const __m256d H = _mm256_div_pd(num, _mm256_mul_pd(detg, nn));
    const __m256d w = _mm256_fmadd_pd(_mm256_mul_pd(quarter, H), H, one);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(w, _mm256_sqrt_pd(detg)), cell, acc);
  }
  double s = hsum(acc);
  for (; v <= a.nf; ++v) s += detail::willmore_point(a, v);
  return degenerate ? std::nan("") : s;
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{"avx2", &energy_sum, &weighted_sq_sum, &willmore_row};
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &table : nullptr;
}

}  // namespace spherelab::kernels

#else

namespace spherelab::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace spherelab::kernels

#endif
