#include "rangekit/beamform.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "rangekit/constants.hpp"
#include "rangekit/errors.hpp"
#include "rangekit/parallel.hpp"
#include "rangekit/rng.hpp"

namespace rangekit {

void CoherenceScenario::validate() const {
  if (n_nodes < 1) throw ValidationError("coherence scenario needs at least 1 node");
  if (!(f_action_hz > 0.0)) throw ValidationError("action frequency must be > 0");
  if (!(sigma_range_m >= 0.0) || !std::isfinite(sigma_range_m)) {
    throw ValidationError("ranging std must be finite and >= 0");
  }
  if (trials == 0) throw ValidationError("trials must be >= 1");
}

double range_to_phase_error(double sigma_range_m, double f_action_hz, bool two_way) {
  if (!(sigma_range_m >= 0.0) || !(f_action_hz >= 0.0)) {
    throw ValidationError("range std and frequency must be >= 0");
  }
  const double phi = kTwoPi * f_action_hz * sigma_range_m / kSpeedOfLight;
  return two_way ? 2.0 * phi : phi;
}

double analytic_gain_fraction(std::size_t n_nodes, double sigma_phi) {
  if (n_nodes == 0) throw ValidationError("node count must be >= 1");
  const double n = static_cast<double>(n_nodes);
  return (1.0 + (n - 1.0) * std::exp(-sigma_phi * sigma_phi)) / n;
}

CoherentGainReport coherent_gain_for_phase(std::size_t n_nodes, double sigma_phi, std::size_t trials,
                                           std::uint64_t seed, unsigned workers) {
  if (n_nodes < 1) throw ValidationError("coherent gain needs at least 1 node");
  if (!(sigma_phi >= 0.0) || !std::isfinite(sigma_phi)) throw ValidationError("phase std must be finite and >= 0");
  if (trials == 0) throw ValidationError("trials must be >= 1");

  const double n = static_cast<double>(n_nodes);
  std::vector<double> fractions(trials);
  parallel_chunks(trials, workers, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      CounterRng rng(seed, t);
      std::complex<double> sum{0.0, 0.0};
      for (std::size_t k = 0; k < n_nodes; ++k) sum += std::polar(1.0, sigma_phi * rng.normal());
      fractions[t] = std::clamp(std::norm(sum) / (n * n), 0.0, 1.0);
    }
  });

  CoherentGainReport rep;
  rep.sigma_phi = sigma_phi;
  rep.trials = trials;
  rep.analytic_gain_fraction = analytic_gain_fraction(n_nodes, sigma_phi);
  double sum = 0.0;
  std::size_t above = 0;
  for (double f : fractions) {
    sum += f;
    if (f > 0.9) ++above;
  }
  rep.mean_gain_fraction = sum / static_cast<double>(trials);
  double ss = 0.0;
  for (double f : fractions) ss += (f - rep.mean_gain_fraction) * (f - rep.mean_gain_fraction);
  rep.std_error = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials)) : 0.0;
  rep.p_gain_above_90pct = static_cast<double>(above) / static_cast<double>(trials);
  return rep;
}

CoherentGainReport coherent_gain(const CoherenceScenario& scenario, unsigned workers) {
  scenario.validate();
  const double sigma_phi = range_to_phase_error(scenario.sigma_range_m, scenario.f_action_hz, scenario.two_way);
  return coherent_gain_for_phase(scenario.n_nodes, sigma_phi, scenario.trials, scenario.seed, workers);
}

}  // namespace rangekit
