#include <algorithm>
#include <complex>

#include "doctest.h"
#include "rangekit/errors.hpp"
#include "rangekit/waveform.hpp"

using namespace rangekit;

namespace {

// Direct O(N^2) DFT second moment; independent of the FFT path.
double naive_msb(const SampledSignal& s) {
  const std::size_t n = s.samples.size();
  const double df = s.sample_rate_hz / double(n);
  double total = 0.0, moment = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += s.samples[i] * std::polar(1.0, -2.0 * M_PI * double((k * i) % n) / double(n));
    }
    const double kk = k < n / 2 ? double(k) : double(k) - double(n);
    const double p = std::norm(acc);
    total += p;
    moment += p * std::pow(2.0 * M_PI * kk * df, 2);
  }
  return moment / total;
}

}  // namespace

TEST_CASE("ToneSet invariants") {
  CHECK_THROWS_AS(ToneSet({}), ValidationError);
  CHECK_THROWS_AS(ToneSet({{1e6}, {1e6}}), ValidationError);
  CHECK_THROWS_AS(ToneSet({{2e6}, {1e6}}), ValidationError);
  CHECK_THROWS_AS(ToneSet({{1e6, 0.0}}), ValidationError);
  const auto t = ToneSet::two_tone(1e9);
  CHECK(t.tones()[0].frequency_hz == -5e8);
  CHECK(t.ambiguity_spacing().value() == doctest::Approx(1e-9).epsilon(1e-15));
  CHECK_FALSE(ToneSet(std::vector<Tone>{{0.0}}).ambiguity_spacing().has_value());
}

TEST_CASE("synthesize two tones") {
  const auto s = synthesize(ToneSet::two_tone(500e6), 1e-6, 4e9);
  REQUIRE(s.samples.size() == 4000);
  CHECK(s.energy() == doctest::Approx(1.0).epsilon(1e-12));

  const auto spec = spectrum_of(s);
  CHECK(spec.total_energy() == doctest::Approx(1.0).epsilon(1e-6));
  std::vector<SpectrumBin> bins = spec.bins();
  std::sort(bins.begin(), bins.end(), [](auto& a, auto& b) { return a.energy_density > b.energy_density; });
  CHECK(std::abs(std::abs(bins[0].frequency_hz) - 250e6) < 1.0);
  CHECK(std::abs(std::abs(bins[1].frequency_hz) - 250e6) < 1.0);
  CHECK(bins[0].frequency_hz != bins[1].frequency_hz);
  CHECK(bins[0].energy_density * spec.bin_width() == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(bins[1].energy_density * spec.bin_width() == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(10.0 * std::log10(bins[2].energy_density / bins[0].energy_density) < -60.0);
}

TEST_CASE("two-tone beat envelope") {
  const auto s = synthesize(ToneSet::two_tone(1e9), 1e-6, 4e9);
  const double peak = std::abs(s.samples[0]);
  for (std::size_t i = 0; i < 40; ++i) {
    const double t = double(i) / 4e9;
    CHECK(std::abs(s.samples[i]) == doctest::Approx(peak * std::abs(std::cos(M_PI * 1e9 * t))).epsilon(1e-9));
  }
}

TEST_CASE("single tone at dc") {
  const auto s = synthesize(ToneSet(std::vector<Tone>{{0.0}}), 1e-7, 1e9);
  for (auto& x : s.samples) CHECK(std::abs(x - s.samples[0]) < 1e-15);
  const auto spec = spectrum_of(s);
  for (auto& b : spec.bins()) {
    if (b.frequency_hz == 0.0) CHECK(b.energy_density * spec.bin_width() == doctest::Approx(1.0));
    else CHECK(b.energy_density < 1e-20);
  }
  CHECK(mean_squared_bandwidth(SpectrumModel::analytic(ToneSet(std::vector<Tone>{{0.0}}))) == 0.0);
}

TEST_CASE("synthesize errors") {
  CHECK_THROWS_AS(synthesize(ToneSet::two_tone(5e9), 1e-6, 4e9), ValidationError);
  CHECK_THROWS_AS(synthesize(ToneSet::two_tone(1e9), 0.0, 4e9), ValidationError);
  CHECK_THROWS_AS(spectrum_of(SampledSignal{{}, 1e9}), ValidationError);
  CHECK_THROWS_AS(spectrum_of(SampledSignal{std::vector<std::complex<double>>(16), 1e9}), ValidationError);
}

TEST_CASE("mean squared bandwidth closed forms") {
  CHECK(mean_squared_bandwidth(SpectrumModel::analytic(ToneSet::two_tone(1e9))) == two_tone_msb(1e9));
  CHECK(two_tone_msb(1e9) == doctest::Approx(9.8696e18).epsilon(1e-4));
  CHECK(rect_msb(1e9) == doctest::Approx(3.2899e18).epsilon(1e-4));
  CHECK(two_tone_vs_rect_ratio(1e9, 1e9) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(two_tone_vs_rect_ratio(5e8, 5e8) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK_THROWS_AS(two_tone_vs_rect_ratio(1e9, 0.0), ValidationError);
}

TEST_CASE("discrete spectrum agrees with a direct DFT") {
  const auto s = synthesize(ToneSet({{-3e8, 1.0}, {1e8, 0.5, 0.4}, {2.5e8, 0.8}}), 2e-7, 1e9, 1.3e-9);
  CHECK(mean_squared_bandwidth(spectrum_of(s)) == doctest::Approx(naive_msb(s)).epsilon(1e-10));
}

TEST_CASE("rect spectrum moment") {
  const double B = 1e9, bw = 1e6;
  std::vector<SpectrumBin> bins;
  for (int i = -500; i < 500; ++i) bins.push_back({(i + 0.5) * bw, 1.0 / B});
  CHECK(mean_squared_bandwidth(SpectrumModel::discrete(bins, bw)) == doctest::Approx(rect_msb(B)).epsilon(1e-5));
  bins[0].energy_density *= 2.0;
  CHECK_THROWS_AS(mean_squared_bandwidth(SpectrumModel::discrete(bins, bw)), ValidationError);
}

TEST_CASE("msb scales with frequency squared") {
  const ToneSet t({{-2e8, 1.0}, {5e7, 0.3}, {3e8, 0.7}});
  const double base = mean_squared_bandwidth(SpectrumModel::analytic(t));
  for (double a : {0.5, 2.0, 3.7}) {
    CHECK(mean_squared_bandwidth(SpectrumModel::analytic(t.scaled(a))) == doctest::Approx(a * a * base).epsilon(1e-12));
  }
}
