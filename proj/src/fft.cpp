#include "rangekit/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "rangekit/errors.hpp"

namespace rangekit {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Fft::Impl {
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  explicit Impl(std::size_t n) {
    std::lock_guard lock(planner_mutex());
    in = fftw_alloc_complex(n);
    out = fftw_alloc_complex(n);
    const int len = static_cast<int>(n);
    fwd = fftw_plan_dft_1d(len, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    inv = fftw_plan_dft_1d(len, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Impl() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
    fftw_free(in);
    fftw_free(out);
  }

  void run(fftw_plan plan, std::span<const std::complex<double>> src, std::span<std::complex<double>> dst) {
    std::copy(src.begin(), src.end(), reinterpret_cast<std::complex<double>*>(in));
    fftw_execute(plan);
    const auto* res = reinterpret_cast<const std::complex<double>*>(out);
    std::copy(res, res + dst.size(), dst.begin());
  }
};

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0) throw ValidationError("FFT length must be positive");
  impl_ = std::make_unique<Impl>(n);
}

Fft::~Fft() = default;
Fft::Fft(Fft&&) noexcept = default;
Fft& Fft::operator=(Fft&&) noexcept = default;

void Fft::forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  if (in.size() != n_ || out.size() != n_) throw ValidationError("FFT buffer length mismatch");
  impl_->run(impl_->fwd, in, out);
}

void Fft::inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  if (in.size() != n_ || out.size() != n_) throw ValidationError("FFT buffer length mismatch");
  impl_->run(impl_->inv, in, out);
}

}  // namespace rangekit
