#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace spherelab {

using Complex = std::complex<double>;

/// Complex DFT of a fixed length, backed by FFTW with estimate-mode plans so results are
/// reproducible run to run. One instance must not be used from two threads at once.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;
  Fft(Fft&& other) noexcept;
  Fft& operator=(Fft&& other) noexcept;

  std::size_t size() const { return n_; }

  /// Unnormalized forward transform: X_k = sum_j x_j exp(-2 pi i jk/n).
  void forward(std::span<const Complex> in, std::span<Complex> out) const;
  /// Inverse transform including the 1/n factor.
  void backward(std::span<const Complex> in, std::span<Complex> out) const;

  std::vector<Complex> forward_real(std::span<const double> in) const;
  /// Real part of the inverse transform.
  std::vector<double> backward_real(std::span<const Complex> in) const;

 private:
  void release() noexcept;

  std::size_t n_ = 0;
  Complex* buf_in_ = nullptr;
  Complex* buf_out_ = nullptr;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
};

/// Signed frequency of DFT bin k for length n (bins above n/2 are negative).
double signed_frequency(std::size_t k, std::size_t n);

/// d^order f / dt^order of the trigonometric interpolant of f sampled uniformly on a
/// period of length `period`. The Nyquist bin is dropped for odd orders.
std::vector<double> spectral_derivative(std::span<const double> f, double period, int order);

/// Largest |DFT coefficient| / n over bins with |frequency| >= n/4. Small for samples of a
/// smooth periodic function, algebraically large when a derivative jumps.
double spectral_tail(std::span<const double> f);

}  // namespace spherelab
