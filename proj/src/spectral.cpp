#include "spherelab/spectral.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <utility>

#include <fftw3.h>

namespace spherelab {

namespace {
// The FFTW planner is not reentrant; plan execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  std::lock_guard lock(planner_mutex());
  buf_in_ = reinterpret_cast<Complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  buf_out_ = reinterpret_cast<Complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  auto* in = reinterpret_cast<fftw_complex*>(buf_in_);
  auto* out = reinterpret_cast<fftw_complex*>(buf_out_);
  plan_fwd_ = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() { release(); }

Fft::Fft(Fft&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      buf_in_(std::exchange(other.buf_in_, nullptr)),
      buf_out_(std::exchange(other.buf_out_, nullptr)),
      plan_fwd_(std::exchange(other.plan_fwd_, nullptr)),
      plan_bwd_(std::exchange(other.plan_bwd_, nullptr)) {}

Fft& Fft::operator=(Fft&& other) noexcept {
  if (this != &other) {
    release();
    n_ = std::exchange(other.n_, 0);
    buf_in_ = std::exchange(other.buf_in_, nullptr);
    buf_out_ = std::exchange(other.buf_out_, nullptr);
    plan_fwd_ = std::exchange(other.plan_fwd_, nullptr);
    plan_bwd_ = std::exchange(other.plan_bwd_, nullptr);
  }
  return *this;
}

void Fft::release() noexcept {
  std::lock_guard lock(planner_mutex());
  if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  if (buf_in_) fftw_free(buf_in_);
  if (buf_out_) fftw_free(buf_out_);
  plan_fwd_ = plan_bwd_ = nullptr;
  buf_in_ = buf_out_ = nullptr;
}

void Fft::forward(std::span<const Complex> in, std::span<Complex> out) const {
  std::copy(in.begin(), in.end(), buf_in_);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::copy(buf_out_, buf_out_ + n_, out.begin());
}

void Fft::backward(std::span<const Complex> in, std::span<Complex> out) const {
  std::copy(in.begin(), in.end(), buf_in_);
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = buf_out_[k] * scale;
}

std::vector<Complex> Fft::forward_real(std::span<const double> in) const {
  for (std::size_t k = 0; k < n_; ++k) buf_in_[k] = Complex(in[k], 0.0);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  return {buf_out_, buf_out_ + n_};
}

std::vector<double> Fft::backward_real(std::span<const Complex> in) const {
  std::copy(in.begin(), in.end(), buf_in_);
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  std::vector<double> out(n_);
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = buf_out_[k].real() * scale;
  return out;
}

double signed_frequency(std::size_t k, std::size_t n) {
  return k <= n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
}

std::vector<double> spectral_derivative(std::span<const double> f, double period, int order) {
  const std::size_t n = f.size();
  Fft fft(n);
  auto c = fft.forward_real(f);
  const double base = 2.0 * std::numbers::pi / period;
  for (std::size_t k = 0; k < n; ++k) {
    if (order % 2 == 1 && n % 2 == 0 && k == n / 2) {
      c[k] = 0.0;
      continue;
    }
    const Complex ik(0.0, base * signed_frequency(k, n));
    Complex factor = 1.0;
    for (int d = 0; d < order; ++d) factor *= ik;
    c[k] *= factor;
  }
  return fft.backward_real(c);
}

double spectral_tail(std::span<const double> f) {
  const std::size_t n = f.size();
  Fft fft(n);
  const auto c = fft.forward_real(f);
  double tail = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    if (std::abs(signed_frequency(k, n)) >= static_cast<double>(n) / 4.0)
      tail = std::max(tail, std::abs(c[k]) / static_cast<double>(n));
  return tail;
}

}  // namespace spherelab
