#pragma once

#include <cstddef>
#include <vector>

#include "rangekit/far_field.hpp"

namespace rangekit {

/// Closed angular interval [min_deg, max_deg] about boresight.
struct BeamRegion {
  double min_deg = -30.0;
  double max_deg = 30.0;

  bool contains(double theta_deg) const { return theta_deg >= min_deg && theta_deg <= max_deg; }
};

/// Phase-center position in the cut plane, fitted from
///   psi(theta) = phi0 + k (x0 sin(theta) + z0 cos(theta)),  k = 2 pi f / c.
struct PhaseCenterFit {
  double x0 = 0.0;    // m
  double z0 = 0.0;    // m
  double phi0 = 0.0;  // rad, wrapped to (-pi, pi]
  double rms_residual = 0.0;  // rad
  BeamRegion region;
  std::size_t samples_used = 0;
};

struct DisplacementPoint {
  double theta_deg = 0.0;
  double dx0 = 0.0;  // m, cut A minus cut B
  double dz0 = 0.0;  // m
};

struct DisplacementSeries {
  std::vector<DisplacementPoint> points;
};

struct DisplacementStats {
  double mean_x0 = 0.0;
  double sd_x0 = 0.0;
  double mean_z0 = 0.0;
  double sd_z0 = 0.0;
  std::size_t count = 0;
  bool sd_defined = true;  // false for a single point; SDs are then reported as 0
};

/// Nearest-multiple-of-360 unwrap along the sequence, returned in radians.
std::vector<double> unwrap_phase_deg(const std::vector<double>& phase_deg);

/// Linear least squares over the unwrapped phase of the in-region samples.
/// Throws ValidationError with fewer than three in-region samples or a
/// rank-deficient design.
PhaseCenterFit fit_phase_center(const FarFieldCut& cut, BeamRegion region = {});

/// For each theta of cut A inside the region (and inside cut B's span), fits
/// both cuts over a window of `window_deg` centered at theta (clipped to the
/// region) and records A minus B.
DisplacementSeries displacement_series(const FarFieldCut& cut_a, const FarFieldCut& cut_b, double window_deg,
                                       BeamRegion region = {});

/// Mean and sample (n-1) standard deviation of dx0 and dz0.
DisplacementStats displacement_stats(const DisplacementSeries& series);

/// displacement / wavelength at `frequency_hz`.
double wavelength_fraction(double displacement_m, double frequency_hz);

}  // namespace rangekit
