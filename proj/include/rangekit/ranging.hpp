#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "rangekit/waveform.hpp"

namespace rangekit {

// SNR convention used throughout: the template has unit energy, the received
// copy is alpha * s(t - tau) + w(t) with w complex white of two-sided PSD N0,
// and SNR = |alpha|^2 / N0. On a grid of rate fs this is a per-sample complex
// noise variance of fs / SNR for alpha = 1. Under this convention the
// time-of-arrival bound is var >= 1 / (2 SNR zeta^2).

struct CrlbResult {
  double var_tau = 0.0;    // s^2
  double std_tau = 0.0;    // s
  double std_range = 0.0;  // m
};

double db_to_linear(double db);

/// Lower bound on time-of-arrival variance, 1 / (2 SNR zeta^2), in s^2.
double crlb_toa(double zeta_f2, double snr_db);

/// Range standard deviation for a delay std: c*std (one-way) or c*std/2 (two-way).
double crlb_range(double std_tau, bool two_way);

CrlbResult crlb(double zeta_f2, double snr_db, bool two_way);

/// SNR (dB) at which separation df2 gives the same bound as (df1, snr1_db).
double equivalent_accuracy_tradeoff(double df1_hz, double snr1_db, double df2_hz);

/// Matched-filter delay estimator with a precomputed template spectrum.
///
/// The correlation R[d] = sum_n rx[n] conj(s[n - d]) is evaluated by FFT,
/// circularly when rx and template have equal length and linearly (template
/// zero-padded) when rx is longer. The peak of |R| is refined by a
/// three-point parabola. With an ambiguity spacing the search first picks a
/// coarse lag from |R|^2 smoothed over one spacing, then takes the strongest
/// local peak within half a spacing of it. In circular mode the result is
/// reported modulo the spacing, i.e. inside [0, spacing).
class ToaEstimator {
 public:
  ToaEstimator(const SampledSignal& tmpl, std::size_t rx_length, std::optional<double> ambiguity_spacing_s);
  ~ToaEstimator();
  ToaEstimator(ToaEstimator&&) noexcept;
  ToaEstimator& operator=(ToaEstimator&&) noexcept;

  /// Throws ValidationError on a length mismatch or an all-zero correlation.
  double estimate(std::span<const std::complex<double>> rx);

  /// |R| from the most recent estimate() call.
  const std::vector<double>& envelope() const { return envelope_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::vector<double> envelope_;
};

/// One-shot convenience wrapper around ToaEstimator.
double ml_toa_estimate(const SampledSignal& rx, const SampledSignal& tmpl,
                       std::optional<double> ambiguity_spacing_s = std::nullopt);

struct RangingScenario {
  ToneSet tones = ToneSet::two_tone(500e6);
  double snr_db = 16.0;  // +inf disables noise
  double true_delay_s = 0.0;
  bool two_way = true;
  double sample_rate_hz = 4e9;
  double duration_s = 1e-6;
  std::uint64_t seed = 1;

  /// Unambiguous delay window: the two-tone spacing, else the record length.
  double unambiguous_window() const;
  /// Throws ValidationError describing the first broken invariant.
  void validate() const;
};

struct MonteCarloReport {
  std::size_t trials = 0;
  // |error| > half the spacing: the in-window estimate aliased across the window edge
  std::size_t failures = 0;
  double rmse_tau = 0.0;     // over non-failed trials, s
  double bias_tau = 0.0;     // s
  double crlb_var_tau = 0.0;
  double crlb_ratio = 0.0;   // rmse^2 / CRLB
  double rmse_range = 0.0;   // m
  double crlb_std_range = 0.0;

  bool operator==(const MonteCarloReport&) const = default;
};

/// Runs `trials` noisy realizations. Trial i draws its noise from the
/// counter-based stream (seed, i), so any worker count gives a bit-identical
/// report. workers = 0 uses the hardware concurrency.
MonteCarloReport monte_carlo(const RangingScenario& scenario, std::size_t trials, unsigned workers = 0);

}  // namespace rangekit
