#pragma once

#include <cstddef>
#include <vector>

#include "rangekit/far_field.hpp"
#include "rangekit/phase_center.hpp"
#include "rangekit/touchstone.hpp"

namespace rangekit {

/// One contiguous region where S11 stays below the threshold.
struct BandMetrics {
  double f_resonance = 0.0;  // Hz, sample with the lowest S11 in the band
  double s11_min_db = 0.0;
  double f_low = 0.0;        // Hz, interpolated threshold crossing
  double f_high = 0.0;
  double fractional_bw = 0.0;  // (f_high - f_low) / f_resonance
  bool truncated_low = false;  // band runs into the start of the sweep
  bool truncated_high = false;
};

/// Bands in ascending frequency. Crossings are placed by linear interpolation
/// in (frequency, dB). Returns an empty list if S11 never drops below threshold.
std::vector<BandMetrics> find_bands(const SParamTrace& trace, double threshold_db = -10.0);

struct GainStats {
  double frequency_hz = 0.0;
  double max_gain_db = 0.0;
  double mean_gain_db = 0.0;         // arithmetic mean of the dB values
  double mean_gain_linear_db = 0.0;  // mean of linear power, expressed in dB
  BeamRegion region;
  std::size_t samples = 0;
};

/// Gain statistics over the in-region samples of a cut (magnitude_db read as gain).
GainStats gain_beam_stats(const FarFieldCut& cut, BeamRegion region = {});

}  // namespace rangekit
