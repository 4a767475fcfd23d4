#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace rangekit {

/// Complex DFT of a fixed length. One instance per thread: execution is
/// reentrant across instances, plan creation is serialized internally.
/// Plans use estimate mode so repeated runs pick the same algorithm.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;
  Fft(Fft&&) noexcept;
  Fft& operator=(Fft&&) noexcept;

  std::size_t size() const { return n_; }

  /// X[k] = sum_n x[n] exp(-j 2 pi k n / N)
  void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
  /// x[n] = sum_k X[k] exp(+j 2 pi k n / N)  (no 1/N scaling)
  void inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

 private:
  struct Impl;
  std::size_t n_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rangekit
