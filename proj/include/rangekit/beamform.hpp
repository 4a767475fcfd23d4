#pragma once

#include <cstddef>
#include <cstdint>

namespace rangekit {

struct CoherenceScenario {
  std::size_t n_nodes = 10;
  double f_action_hz = 1.88e9;
  double sigma_range_m = 0.0;  // per-node ranging std
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
  bool two_way = false;  // retrodirective: position error enters the path twice

  void validate() const;
};

struct CoherentGainReport {
  double sigma_phi = 0.0;              // rad
  double mean_gain_fraction = 0.0;     // Monte Carlo mean of |sum e^{j phi}|^2 / N^2
  double std_error = 0.0;              // standard error of that mean
  double analytic_gain_fraction = 0.0; // [1 + (N-1) exp(-sigma^2)] / N
  double p_gain_above_90pct = 0.0;
  std::size_t trials = 0;
};

/// sigma_phi = 2 pi f sigma_range / c, doubled for two-way geometry.
double range_to_phase_error(double sigma_range_m, double f_action_hz, bool two_way = false);

/// Expected power-gain fraction for i.i.d. zero-mean Gaussian node phases.
double analytic_gain_fraction(std::size_t n_nodes, double sigma_phi);

/// Monte Carlo over i.i.d. Gaussian node phases of std sigma_phi. Trial i uses
/// the counter-based stream (seed, i); the report does not depend on workers.
CoherentGainReport coherent_gain_for_phase(std::size_t n_nodes, double sigma_phi, std::size_t trials,
                                           std::uint64_t seed, unsigned workers = 0);

CoherentGainReport coherent_gain(const CoherenceScenario& scenario, unsigned workers = 0);

}  // namespace rangekit
