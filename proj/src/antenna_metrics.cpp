#include "rangekit/antenna_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rangekit/errors.hpp"
#include "rangekit/numfmt.hpp"

namespace rangekit {

namespace {

double crossing(const SParamPoint& a, const SParamPoint& b, double threshold_db) {
  const double t = (threshold_db - a.s11_db) / (b.s11_db - a.s11_db);
  return a.frequency_hz + t * (b.frequency_hz - a.frequency_hz);
}

}  // namespace

std::vector<BandMetrics> find_bands(const SParamTrace& trace, double threshold_db) {
  trace.validate();
  const auto& pts = trace.points;
  std::vector<BandMetrics> bands;
  std::size_t i = 0;
  while (i < pts.size()) {
    if (!(pts[i].s11_db < threshold_db)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    std::size_t best = i;
    while (i < pts.size() && pts[i].s11_db < threshold_db) {
      if (pts[i].s11_db < pts[best].s11_db) best = i;
      ++i;
    }
    const std::size_t stop = i - 1;

    BandMetrics b;
    b.f_resonance = pts[best].frequency_hz;
    b.s11_min_db = pts[best].s11_db;
    b.truncated_low = start == 0;
    b.truncated_high = stop == pts.size() - 1;
    b.f_low = b.truncated_low ? pts.front().frequency_hz : crossing(pts[start - 1], pts[start], threshold_db);
    b.f_high = b.truncated_high ? pts.back().frequency_hz : crossing(pts[stop], pts[stop + 1], threshold_db);
    b.fractional_bw = (b.f_high - b.f_low) / b.f_resonance;
    bands.push_back(b);
  }
  return bands;
}

GainStats gain_beam_stats(const FarFieldCut& cut, BeamRegion region) {
  if (!(region.max_deg >= region.min_deg)) throw ValidationError("gain region must have max >= min");
  GainStats st;
  st.frequency_hz = cut.frequency_hz;
  st.region = region;
  st.max_gain_db = -std::numeric_limits<double>::infinity();
  double sum_db = 0.0;
  double sum_lin = 0.0;
  for (const auto& s : cut.samples) {
    if (!region.contains(s.theta_deg)) continue;
    ++st.samples;
    st.max_gain_db = std::max(st.max_gain_db, s.magnitude_db);
    sum_db += s.magnitude_db;
    sum_lin += std::pow(10.0, s.magnitude_db / 10.0);
  }
  if (st.samples == 0) {
    throw ValidationError("no pattern samples in [" + format_double(region.min_deg) + ", " +
                          format_double(region.max_deg) + "] deg");
  }
  const double n = static_cast<double>(st.samples);
  st.mean_gain_db = sum_db / n;
  st.mean_gain_linear_db = 10.0 * std::log10(sum_lin / n);
  return st;
}

}  // namespace rangekit
