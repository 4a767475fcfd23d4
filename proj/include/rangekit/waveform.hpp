#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace rangekit {

/// One CW tone. Frequency is relative to the band center (baseband-equivalent).
struct Tone {
  double frequency_hz = 0.0;
  double amplitude = 1.0;
  double phase_rad = 0.0;
};

/// Non-empty list of tones with strictly increasing frequencies and positive amplitudes.
class ToneSet {
 public:
  /// Throws ValidationError if the invariants do not hold.
  explicit ToneSet(std::vector<Tone> tones);

  /// Two equal-amplitude tones at -separation/2 and +separation/2.
  static ToneSet two_tone(double separation_hz, double amplitude = 1.0);

  const std::vector<Tone>& tones() const { return tones_; }
  std::size_t size() const { return tones_.size(); }
  double max_abs_frequency() const;

  /// Correlation-peak spacing 1/(f2 - f1) for two-tone sets; nullopt otherwise.
  std::optional<double> ambiguity_spacing() const;

  /// Copy with every frequency multiplied by `factor` (> 0).
  ToneSet scaled(double factor) const;

 private:
  std::vector<Tone> tones_;
};

struct SampledSignal {
  std::vector<std::complex<double>> samples;
  double sample_rate_hz = 0.0;

  double duration() const { return static_cast<double>(samples.size()) / sample_rate_hz; }
  /// Continuous-time energy estimate sum |x|^2 / fs.
  double energy() const;
};

struct SpectrumBin {
  double frequency_hz = 0.0;
  double energy_density = 0.0;  // 1/Hz
};

/// |G(f)|^2, either as an exact tone list or as a DFT on a uniform grid.
class SpectrumModel {
 public:
  enum class Kind { AnalyticTones, Discrete };

  /// Tone weights are the tone energies normalized to sum to one.
  static SpectrumModel analytic(const ToneSet& tones);
  /// Bins must be on a uniform ascending grid of the given width with
  /// non-negative densities. Normalization is not enforced here; see total_energy().
  static SpectrumModel discrete(std::vector<SpectrumBin> bins, double bin_width_hz);

  Kind kind() const { return kind_; }
  const std::vector<SpectrumBin>& bins() const { return bins_; }
  /// For analytic spectra each bin holds (frequency, weight) and the width is zero.
  double bin_width() const { return bin_width_; }
  /// Integral of |G|^2 over frequency.
  double total_energy() const;

 private:
  Kind kind_ = Kind::Discrete;
  std::vector<SpectrumBin> bins_;
  double bin_width_ = 0.0;
};

/// Samples sum_i a_i exp(j(2 pi f_i (t - delay) + p_i)) at t = n/fs,
/// scaled to unit energy. N = round(duration * fs).
/// Integer-cycle durations keep DFT leakage negligible.
SampledSignal synthesize(const ToneSet& tones, double duration_s, double sample_rate_hz, double delay_s = 0.0);

/// Energy-normalized DFT spectrum (no window), bins ordered from -fs/2 upward.
SpectrumModel spectrum_of(const SampledSignal& signal);

/// zeta_f^2 = integral (2 pi f)^2 |G(f)|^2 df, in rad^2/s^2.
double mean_squared_bandwidth(const SpectrumModel& spectrum);

/// Closed forms used as oracles and by the tradeoff tools.
double two_tone_msb(double separation_hz);    // (pi df)^2
double rect_msb(double bandwidth_hz);         // (2 pi)^2 B^2 / 12

/// zeta^2(two tones at +-df/2) / zeta^2(flat over B). Equals 3 when df == B.
double two_tone_vs_rect_ratio(double separation_hz, double bandwidth_hz);

}  // namespace rangekit
