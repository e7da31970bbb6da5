#include "spherelab/kernels.hpp"
#include "willmore_point.hpp"

namespace spherelab::kernels {

namespace {

double energy_sum(const double* k, const double* ds, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += (1.0 + k[i] * k[i]) * ds[i];
  return s;
}

double weighted_sq_sum(const double* x, const double* y, const double* z, const double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += (x[i] * x[i] + y[i] * y[i] + z[i] * z[i]) * w[i];
  return s;
}

double willmore_row(const WillmoreRowArgs& a) {
  double s = 0.0;
  for (std::size_t v = 1; v <= a.nf; ++v) s += detail::willmore_point(a, v);
  return s;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", &energy_sum, &weighted_sq_sum, &willmore_row};
  return table;
}

}  // namespace spherelab::kernels
