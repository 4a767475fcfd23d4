#include "rangekit/ranging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rangekit/constants.hpp"
#include "rangekit/errors.hpp"
#include "rangekit/fft.hpp"
#include "rangekit/numfmt.hpp"
#include "rangekit/parallel.hpp"
#include "rangekit/rng.hpp"

namespace rangekit {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double crlb_toa(double zeta_f2, double snr_db) {
  if (!(zeta_f2 > 0.0) || !std::isfinite(zeta_f2)) {
    throw ValidationError("mean-squared bandwidth must be > 0");
  }
  if (std::isnan(snr_db)) throw ValidationError("SNR must be a number");
  return 1.0 / (2.0 * db_to_linear(snr_db) * zeta_f2);
}

double crlb_range(double std_tau, bool two_way) {
  if (!(std_tau >= 0.0)) throw ValidationError("delay standard deviation must be >= 0");
  const double one_way = kSpeedOfLight * std_tau;
  return two_way ? one_way / 2.0 : one_way;
}

CrlbResult crlb(double zeta_f2, double snr_db, bool two_way) {
  CrlbResult r;
  r.var_tau = crlb_toa(zeta_f2, snr_db);
  r.std_tau = std::sqrt(r.var_tau);
  r.std_range = crlb_range(r.std_tau, two_way);
  return r;
}

double equivalent_accuracy_tradeoff(double df1_hz, double snr1_db, double df2_hz) {
  if (!(df1_hz > 0.0) || !(df2_hz > 0.0)) throw ValidationError("tone separations must be > 0");
  return snr1_db - 20.0 * std::log10(df2_hz / df1_hz);
}

// ---------------------------------------------------------------------------

struct ToaEstimator::Impl {
  std::size_t n = 0;
  std::size_t template_len = 0;
  double fs = 0.0;
  std::optional<double> spacing_s;
  Fft fft;
  std::vector<std::complex<double>> template_spec;  // conj(FFT(template padded))
  std::vector<std::complex<double>> work;
  std::vector<std::complex<double>> corr;
  std::vector<double> smoothed;

  Impl(std::size_t len) : n(len), fft(len), template_spec(len), work(len), corr(len) {}
};

ToaEstimator::ToaEstimator(const SampledSignal& tmpl, std::size_t rx_length,
                           std::optional<double> ambiguity_spacing_s) {
  if (tmpl.samples.empty()) throw ValidationError("template is empty");
  if (!(tmpl.energy() > 0.0)) throw ValidationError("template energy must be > 0");
  if (rx_length < tmpl.samples.size()) throw ValidationError("received record shorter than template");
  if (ambiguity_spacing_s && !(*ambiguity_spacing_s > 0.0)) {
    throw ValidationError("ambiguity spacing must be > 0");
  }
  impl_ = std::make_unique<Impl>(rx_length);
  impl_->template_len = tmpl.samples.size();
  impl_->fs = tmpl.sample_rate_hz;
  impl_->spacing_s = ambiguity_spacing_s;

  std::vector<std::complex<double>> padded(rx_length, {0.0, 0.0});
  std::copy(tmpl.samples.begin(), tmpl.samples.end(), padded.begin());
  impl_->fft.forward(padded, impl_->template_spec);
  for (auto& x : impl_->template_spec) x = std::conj(x);
  envelope_.resize(rx_length);
}

ToaEstimator::~ToaEstimator() = default;
ToaEstimator::ToaEstimator(ToaEstimator&&) noexcept = default;
ToaEstimator& ToaEstimator::operator=(ToaEstimator&&) noexcept = default;

double ToaEstimator::estimate(std::span<const std::complex<double>> rx) {
  Impl& s = *impl_;
  if (rx.size() != s.n) throw ValidationError("received record length does not match the estimator");

  s.fft.forward(rx, s.work);
  for (std::size_t k = 0; k < s.n; ++k) s.work[k] *= s.template_spec[k];
  s.fft.inverse(s.work, s.corr);

  double peak_mag = 0.0;
  for (std::size_t k = 0; k < s.n; ++k) {
    envelope_[k] = std::abs(s.corr[k]);
    peak_mag = std::max(peak_mag, envelope_[k]);
  }
  if (!(peak_mag > 0.0)) throw ValidationError("degenerate correlation (all zeros)");

  const bool circular = s.n == s.template_len;
  const auto len = static_cast<std::ptrdiff_t>(s.n);
  // Lags where the template lies fully inside the record.
  const std::ptrdiff_t last_lag = circular ? len - 1 : len - static_cast<std::ptrdiff_t>(s.template_len);
  auto at = [&](std::ptrdiff_t d) -> double {
    if (circular) return envelope_[static_cast<std::size_t>(((d % len) + len) % len)];
    if (d < 0 || d > last_lag) return 0.0;
    return envelope_[static_cast<std::size_t>(d)];
  };

  std::ptrdiff_t best = 0;
  if (s.spacing_s) {
    const double spacing_samples = *s.spacing_s * s.fs;
    const auto half = static_cast<std::ptrdiff_t>(std::floor(spacing_samples / 2.0));
    // Coarse: energy of |R| over one ambiguity interval, which washes out the fine structure.
    s.smoothed.assign(static_cast<std::size_t>(last_lag + 1), 0.0);
    double run = 0.0;
    for (std::ptrdiff_t j = -half; j <= half; ++j) run += at(j) * at(j);
    std::ptrdiff_t coarse = 0;
    double coarse_val = -1.0;
    for (std::ptrdiff_t d = 0; d <= last_lag; ++d) {
      if (d > 0) {
        const double out = at(d - 1 - half);
        const double in = at(d + half);
        run += in * in - out * out;
      }
      if (run > coarse_val * (1.0 + 1e-12)) {
        coarse_val = run;
        coarse = d;
      }
    }
    // Fine: strongest sample within half a spacing of the coarse lag.
    double best_val = -1.0;
    for (std::ptrdiff_t d = coarse - half; d <= coarse + half; ++d) {
      if (!circular && (d < 0 || d > last_lag)) continue;
      if (at(d) > best_val) {
        best_val = at(d);
        best = d;
      }
    }
  } else {
    double best_val = -1.0;
    for (std::ptrdiff_t d = 0; d <= last_lag; ++d) {
      if (at(d) > best_val) {
        best_val = at(d);
        best = d;
      }
    }
  }
  // Climb to a local maximum so the parabola straddles a real peak.
  for (std::ptrdiff_t guard = 0; guard < len; ++guard) {
    if (at(best + 1) > at(best)) {
      ++best;
    } else if (at(best - 1) > at(best)) {
      --best;
    } else {
      break;
    }
  }

  const double ym = at(best - 1);
  const double y0 = at(best);
  const double yp = at(best + 1);
  const double denom = ym - 2.0 * y0 + yp;
  double frac = denom < 0.0 ? 0.5 * (ym - yp) / denom : 0.0;
  frac = std::clamp(frac, -0.5, 0.5);

  double tau = (static_cast<double>(best) + frac) / s.fs;
  if (circular) {
    const double period = s.spacing_s ? *s.spacing_s : static_cast<double>(s.n) / s.fs;
    tau = std::fmod(tau, period);
    if (tau < 0.0) tau += period;
  }
  return tau;
}

double ml_toa_estimate(const SampledSignal& rx, const SampledSignal& tmpl, std::optional<double> ambiguity_spacing_s) {
  if (rx.sample_rate_hz != tmpl.sample_rate_hz) throw ValidationError("rx and template sample rates differ");
  ToaEstimator est(tmpl, rx.samples.size(), ambiguity_spacing_s);
  return est.estimate(rx.samples);
}

// ---------------------------------------------------------------------------

double RangingScenario::unambiguous_window() const {
  if (auto spacing = tones.ambiguity_spacing()) return *spacing;
  return duration_s;
}

void RangingScenario::validate() const {
  if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity()) {
    throw ValidationError("snr_db must be a number or +inf");
  }
  if (!(sample_rate_hz > 2.0 * tones.max_abs_frequency())) {
    throw ValidationError("sample rate violates Nyquist for the tone set");
  }
  if (!(duration_s > 0.0) || std::llround(duration_s * sample_rate_hz) < 3) {
    throw ValidationError("duration must cover at least three samples");
  }
  if (!(true_delay_s >= 0.0) || !(true_delay_s < unambiguous_window())) {
    throw ValidationError("true delay " + format_double(true_delay_s) + " s outside the unambiguous window [0, " +
                          format_double(unambiguous_window()) + ")");
  }
}

MonteCarloReport monte_carlo(const RangingScenario& scenario, std::size_t trials, unsigned workers) {
  if (trials == 0) throw ValidationError("trials must be >= 1");
  scenario.validate();

  const SampledSignal tmpl = synthesize(scenario.tones, scenario.duration_s, scenario.sample_rate_hz);
  const SampledSignal clean =
      synthesize(scenario.tones, scenario.duration_s, scenario.sample_rate_hz, scenario.true_delay_s);
  const auto spacing = scenario.tones.ambiguity_spacing();
  const bool noiseless = std::isinf(scenario.snr_db);
  const double sigma =
      noiseless ? 0.0 : std::sqrt(scenario.sample_rate_hz / db_to_linear(scenario.snr_db) / 2.0);
  const double fail_threshold = spacing ? *spacing / 2.0 : std::numeric_limits<double>::infinity();

  // NaN marks an ambiguity failure.
  std::vector<double> errors(trials, 0.0);
  parallel_chunks(trials, workers, [&](unsigned, std::size_t begin, std::size_t end) {
    ToaEstimator estimator(tmpl, tmpl.samples.size(), spacing);
    std::vector<std::complex<double>> rx(clean.samples.size());
    for (std::size_t t = begin; t < end; ++t) {
      CounterRng rng(scenario.seed, t);
      for (std::size_t i = 0; i < rx.size(); ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        rx[i] = clean.samples[i] + std::complex<double>(sigma * re, sigma * im);
      }
      const double err = estimator.estimate(rx) - scenario.true_delay_s;
      errors[t] = std::abs(err) > fail_threshold ? std::numeric_limits<double>::quiet_NaN() : err;
    }
  });

  MonteCarloReport rep;
  rep.trials = trials;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t ok = 0;
  for (double e : errors) {  // fixed order keeps the sums bit-identical
    if (std::isnan(e)) {
      ++rep.failures;
      continue;
    }
    sum += e;
    sum_sq += e * e;
    ++ok;
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rep.bias_tau = ok ? sum / static_cast<double>(ok) : nan;
  rep.rmse_tau = ok ? std::sqrt(sum_sq / static_cast<double>(ok)) : nan;

  const double zeta = mean_squared_bandwidth(SpectrumModel::analytic(scenario.tones));
  rep.crlb_var_tau = zeta > 0.0 ? crlb_toa(zeta, scenario.snr_db) : std::numeric_limits<double>::infinity();
  const double mse = rep.rmse_tau * rep.rmse_tau;
  if (rep.crlb_var_tau > 0.0) {
    rep.crlb_ratio = mse / rep.crlb_var_tau;
  } else {
    rep.crlb_ratio = mse > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  rep.rmse_range = ok ? crlb_range(rep.rmse_tau, scenario.two_way) : nan;
  rep.crlb_std_range = std::isfinite(rep.crlb_var_tau) ? crlb_range(std::sqrt(rep.crlb_var_tau), scenario.two_way) : nan;
  return rep;
}

}  // namespace rangekit
