#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference implementation and, on
// x86-64, an AVX2+FMA variant; the variant is picked once at runtime from CPUID.
// Setting SPHERELAB_SIMD=scalar in the environment forces the reference path.

#include <cstddef>

namespace spherelab::kernels {

/// One row of a periodic 4-component grid, padded with one ghost sample on each side:
/// c[k][0] duplicates the last interior sample, c[k][nf + 1] the first.
struct PaddedRow {
  const double* c[4];
};

struct WillmoreRowArgs {
  PaddedRow prev, cur, next;
  std::size_t nf = 0;
  double du = 0.0;
  double dv = 0.0;
};

struct KernelTable {
  const char* name;
  /// sum_i (1 + k_i^2) ds_i
  double (*energy_sum)(const double* k, const double* ds, std::size_t n);
  /// sum_i (x_i^2 + y_i^2 + z_i^2) w_i
  double (*weighted_sq_sum)(const double* x, const double* y, const double* z, const double* w,
                            std::size_t n);
  /// sum over the row of (1 + H^2/4) sqrt(det g) du dv; NaN if the metric degenerates.
  double (*willmore_row)(const WillmoreRowArgs& args);
};

const KernelTable& scalar_table();
/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();
const KernelTable& active();

}  // namespace spherelab::kernels
