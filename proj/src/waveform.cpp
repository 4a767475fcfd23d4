#include "rangekit/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rangekit/constants.hpp"
#include "rangekit/errors.hpp"
#include "rangekit/fft.hpp"
#include "rangekit/numfmt.hpp"

namespace rangekit {

namespace {
constexpr double kEnergyTolerance = 1e-9;
}

ToneSet::ToneSet(std::vector<Tone> tones) : tones_(std::move(tones)) {
  if (tones_.empty()) throw ValidationError("tone set must not be empty");
  for (std::size_t i = 0; i < tones_.size(); ++i) {
    const Tone& t = tones_[i];
    if (!std::isfinite(t.frequency_hz) || !std::isfinite(t.phase_rad)) {
      throw ValidationError("tone " + std::to_string(i) + " has a non-finite field");
    }
    if (!(t.amplitude > 0.0) || !std::isfinite(t.amplitude)) {
      throw ValidationError("tone " + std::to_string(i) + " amplitude must be > 0");
    }
    if (i > 0 && !(t.frequency_hz > tones_[i - 1].frequency_hz)) {
      throw ValidationError("tone frequencies must be strictly increasing");
    }
  }
}

ToneSet ToneSet::two_tone(double separation_hz, double amplitude) {
  if (!(separation_hz > 0.0)) throw ValidationError("tone separation must be > 0");
  return ToneSet({{-separation_hz / 2.0, amplitude, 0.0}, {separation_hz / 2.0, amplitude, 0.0}});
}

double ToneSet::max_abs_frequency() const {
  double m = 0.0;
  for (const auto& t : tones_) m = std::max(m, std::abs(t.frequency_hz));
  return m;
}

std::optional<double> ToneSet::ambiguity_spacing() const {
  if (tones_.size() != 2) return std::nullopt;
  return 1.0 / (tones_[1].frequency_hz - tones_[0].frequency_hz);
}

ToneSet ToneSet::scaled(double factor) const {
  if (!(factor > 0.0)) throw ValidationError("frequency scale factor must be > 0");
  auto out = tones_;
  for (auto& t : out) t.frequency_hz *= factor;
  return ToneSet(std::move(out));
}

double SampledSignal::energy() const {
  double sum = 0.0;
  for (const auto& s : samples) sum += std::norm(s);
  return sum / sample_rate_hz;
}

SpectrumModel SpectrumModel::analytic(const ToneSet& tones) {
  SpectrumModel m;
  m.kind_ = Kind::AnalyticTones;
  double total = 0.0;
  for (const auto& t : tones.tones()) total += t.amplitude * t.amplitude;
  for (const auto& t : tones.tones()) m.bins_.push_back({t.frequency_hz, t.amplitude * t.amplitude / total});
  return m;
}

SpectrumModel SpectrumModel::discrete(std::vector<SpectrumBin> bins, double bin_width_hz) {
  if (bins.empty()) throw ValidationError("spectrum must have at least one bin");
  if (!(bin_width_hz > 0.0)) throw ValidationError("spectrum bin width must be > 0");
  for (const auto& b : bins) {
    if (!(b.energy_density >= 0.0) || !std::isfinite(b.frequency_hz)) {
      throw ValidationError("spectrum bins need finite frequencies and non-negative densities");
    }
  }
  for (std::size_t i = 1; i < bins.size(); ++i) {
    const double step = bins[i].frequency_hz - bins[i - 1].frequency_hz;
    if (std::abs(step - bin_width_hz) > 1e-6 * bin_width_hz) {
      throw ValidationError("spectrum bins are not on a uniform ascending grid");
    }
  }
  SpectrumModel m;
  m.kind_ = Kind::Discrete;
  m.bins_ = std::move(bins);
  m.bin_width_ = bin_width_hz;
  return m;
}

double SpectrumModel::total_energy() const {
  double sum = 0.0;
  for (const auto& b : bins_) sum += b.energy_density;
  return kind_ == Kind::Discrete ? sum * bin_width_ : sum;
}

SampledSignal synthesize(const ToneSet& tones, double duration_s, double sample_rate_hz, double delay_s) {
  if (!(sample_rate_hz > 0.0)) throw ValidationError("sample rate must be > 0");
  if (!(duration_s > 0.0)) throw ValidationError("duration must be > 0");
  if (!(sample_rate_hz > 2.0 * tones.max_abs_frequency())) {
    throw ValidationError("sample rate " + format_double(sample_rate_hz) + " Hz violates Nyquist for tone at " +
                          format_double(tones.max_abs_frequency()) + " Hz");
  }
  const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
  if (n == 0) throw ValidationError("duration shorter than one sample");

  SampledSignal sig;
  sig.sample_rate_hz = sample_rate_hz;
  sig.samples.assign(n, {0.0, 0.0});
  for (const auto& t : tones.tones()) {
    // Phase evaluated per sample (not accumulated) to keep long records exact.
    const double w = kTwoPi * t.frequency_hz;
    for (std::size_t i = 0; i < n; ++i) {
      const double time = static_cast<double>(i) / sample_rate_hz - delay_s;
      sig.samples[i] += std::polar(t.amplitude, w * time + t.phase_rad);
    }
  }
  const double e = sig.energy();
  if (!(e > 0.0)) throw ValidationError("synthesized signal has zero energy");
  const double scale = 1.0 / std::sqrt(e);
  for (auto& s : sig.samples) s *= scale;
  return sig;
}

SpectrumModel spectrum_of(const SampledSignal& signal) {
  const std::size_t n = signal.samples.size();
  if (n == 0) throw ValidationError("cannot take the spectrum of an empty signal");
  if (!(signal.sample_rate_hz > 0.0)) throw ValidationError("sample rate must be > 0");
  const double fs = signal.sample_rate_hz;

  std::vector<std::complex<double>> spec(n);
  Fft fft(n);
  fft.forward(signal.samples, spec);

  double power_sum = 0.0;
  for (const auto& x : spec) power_sum += std::norm(x);
  // Energy of G(f) = X/fs on a grid of width fs/N.
  const double energy = power_sum / (fs * static_cast<double>(n));
  if (!(energy > 0.0)) throw ValidationError("signal has zero energy; spectrum cannot be normalized");

  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  const auto len = static_cast<std::ptrdiff_t>(n);
  std::vector<SpectrumBin> bins;
  bins.reserve(n);
  for (std::ptrdiff_t k = -half; k < len - half; ++k) {
    const std::size_t idx = static_cast<std::size_t>((k + len) % len);
    const double density = std::norm(spec[idx]) / (fs * fs) / energy;
    bins.push_back({static_cast<double>(k) * fs / static_cast<double>(n), density});
  }
  return SpectrumModel::discrete(std::move(bins), fs / static_cast<double>(n));
}

double mean_squared_bandwidth(const SpectrumModel& spectrum) {
  const double total = spectrum.total_energy();
  if (std::abs(total - 1.0) > kEnergyTolerance) {
    throw ValidationError("spectrum is not energy-normalized (total " + format_double(total) + ")");
  }
  double sum = 0.0;
  for (const auto& b : spectrum.bins()) {
    const double w = kTwoPi * b.frequency_hz;
    sum += w * w * b.energy_density;
  }
  return spectrum.kind() == SpectrumModel::Kind::Discrete ? sum * spectrum.bin_width() : sum;
}

double two_tone_msb(double separation_hz) {
  const double x = kPi * separation_hz;
  return x * x;
}

double rect_msb(double bandwidth_hz) { return kTwoPi * kTwoPi * bandwidth_hz * bandwidth_hz / 12.0; }

double two_tone_vs_rect_ratio(double separation_hz, double bandwidth_hz) {
  if (!(separation_hz > 0.0) || !(bandwidth_hz > 0.0)) {
    throw ValidationError("bandwidths must be > 0");
  }
  return two_tone_msb(separation_hz) / rect_msb(bandwidth_hz);
}

}  // namespace rangekit
