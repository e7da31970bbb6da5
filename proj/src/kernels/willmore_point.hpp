#pragma once

// Shared scalar evaluation of the Willmore integrand at one grid sample. Also used for
// the remainder lanes of vector variants. Functions are static so each translation unit,
// built with its own ISA flags, keeps a private copy.

#include <cmath>

#include "spherelab/kernels.hpp"

namespace spherelab::kernels::detail {

static inline double det3(double a0, double a1, double a2, double b0, double b1, double b2, double c0,
                   double c1, double c2) {
  return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
}

static inline double willmore_point(const WillmoreRowArgs& a, std::size_t v) {
  double X[4], Xu[4], Xv[4], Xuu[4], Xvv[4], Xuv[4];
  const double idu = 1.0 / a.du, idv = 1.0 / a.dv;
  for (int k = 0; k < 4; ++k) {
    const double c = a.cur.c[k][v], cp = a.cur.c[k][v + 1], cm = a.cur.c[k][v - 1];
    const double n0 = a.next.c[k][v], p0 = a.prev.c[k][v];
    X[k] = c;
    Xu[k] = 0.5 * (n0 - p0) * idu;
    Xv[k] = 0.5 * (cp - cm) * idv;
    Xuu[k] = (n0 - 2.0 * c + p0) * idu * idu;
    Xvv[k] = (cp - 2.0 * c + cm) * idv * idv;
    Xuv[k] = 0.25 * (a.next.c[k][v + 1] - a.next.c[k][v - 1] - a.prev.c[k][v + 1] + a.prev.c[k][v - 1]) *
             idu * idv;
  }
  double g11 = 0, g12 = 0, g22 = 0;
  for (int k = 0; k < 4; ++k) {
    g11 += Xu[k] * Xu[k];
    g12 += Xu[k] * Xv[k];
    g22 += Xv[k] * Xv[k];
  }
  const double detg = g11 * g22 - g12 * g12;
  // Normal of the surface inside S^3: orthogonal to X, Xu, Xv.
  const double n[4] = {det3(X[1], X[2], X[3], Xu[1], Xu[2], Xu[3], Xv[1], Xv[2], Xv[3]),
                       -det3(X[0], X[2], X[3], Xu[0], Xu[2], Xu[3], Xv[0], Xv[2], Xv[3]),
                       det3(X[0], X[1], X[3], Xu[0], Xu[1], Xu[3], Xv[0], Xv[1], Xv[3]),
                       -det3(X[0], X[1], X[2], Xu[0], Xu[1], Xu[2], Xv[0], Xv[1], Xv[2])};
  const double nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2] + n[3] * n[3]);
  if (!(detg > 0.0) || !(nn > 0.0)) return std::nan("");
  double h11 = 0, h12 = 0, h22 = 0;
  for (int k = 0; k < 4; ++k) {
    h11 += Xuu[k] * n[k];
    h12 += Xuv[k] * n[k];
    h22 += Xvv[k] * n[k];
  }
  const double H = (g22 * h11 - 2.0 * g12 * h12 + g11 * h22) / (detg * nn);
  return (1.0 + 0.25 * H * H) * std::sqrt(detg) * a.du * a.dv;
}

}  // namespace spherelab::kernels::detail
