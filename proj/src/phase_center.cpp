#include "rangekit/phase_center.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "rangekit/constants.hpp"
#include "rangekit/errors.hpp"
#include "rangekit/numfmt.hpp"

namespace rangekit {

std::vector<double> unwrap_phase_deg(const std::vector<double>& phase_deg) {
  std::vector<double> out;
  out.reserve(phase_deg.size());
  double offset = 0.0;
  for (std::size_t i = 0; i < phase_deg.size(); ++i) {
    if (i > 0) {
      const double step = phase_deg[i] + offset - (phase_deg[i - 1] + offset);
      offset -= 360.0 * std::round(step / 360.0);
    }
    out.push_back(deg_to_rad(phase_deg[i] + offset));
  }
  return out;
}

PhaseCenterFit fit_phase_center(const FarFieldCut& cut, BeamRegion region) {
  if (!(cut.frequency_hz > 0.0)) throw ValidationError("cut frequency must be > 0");
  if (!(region.max_deg > region.min_deg)) throw ValidationError("beam region must have max > min");

  std::vector<double> theta;
  std::vector<double> phase;
  for (const auto& s : cut.samples) {
    if (region.contains(s.theta_deg)) {
      theta.push_back(deg_to_rad(s.theta_deg));
      phase.push_back(s.phase_deg);
    }
  }
  if (theta.size() < 3) {
    throw ValidationError("phase-center fit needs >= 3 samples in [" + format_double(region.min_deg) + ", " +
                          format_double(region.max_deg) + "] deg, got " + std::to_string(theta.size()));
  }
  const std::vector<double> psi = unwrap_phase_deg(phase);

  // Unit columns keep the design well scaled; k is divided out afterwards.
  const auto rows = static_cast<Eigen::Index>(theta.size());
  Eigen::MatrixXd design(rows, 3);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto u = static_cast<std::size_t>(i);
    design(i, 0) = 1.0;
    design(i, 1) = std::sin(theta[u]);
    design(i, 2) = std::cos(theta[u]);
    rhs(i) = psi[u];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-12);
  if (qr.rank() < 3) throw ValidationError("phase-center design is rank deficient (angles not distinct)");
  const Eigen::Vector3d coef = qr.solve(rhs);
  const Eigen::VectorXd resid = design * coef - rhs;

  const double k = kTwoPi * cut.frequency_hz / kSpeedOfLight;
  PhaseCenterFit fit;
  fit.x0 = coef(1) / k;
  fit.z0 = coef(2) / k;
  fit.phi0 = std::remainder(coef(0), kTwoPi);
  if (fit.phi0 <= -kPi) fit.phi0 += kTwoPi;
  fit.rms_residual = std::sqrt(resid.squaredNorm() / static_cast<double>(rows));
  fit.region = region;
  fit.samples_used = theta.size();
  return fit;
}

DisplacementSeries displacement_series(const FarFieldCut& cut_a, const FarFieldCut& cut_b, double window_deg,
                                       BeamRegion region) {
  if (cut_a.phi_cut_deg != cut_b.phi_cut_deg) throw ValidationError("cuts must share the same phi");
  if (!(window_deg > 0.0)) throw ValidationError("window must be > 0 deg");
  if (cut_a.samples.empty() || cut_b.samples.empty()) throw ValidationError("cuts must not be empty");

  const double lo = std::max({region.min_deg, cut_a.samples.front().theta_deg, cut_b.samples.front().theta_deg});
  const double hi = std::min({region.max_deg, cut_a.samples.back().theta_deg, cut_b.samples.back().theta_deg});
  if (!(hi > lo)) throw ValidationError("beam regions of the two cuts do not overlap");

  DisplacementSeries series;
  for (const auto& s : cut_a.samples) {
    if (s.theta_deg < lo || s.theta_deg > hi) continue;
    const BeamRegion local{std::max(lo, s.theta_deg - window_deg / 2.0), std::min(hi, s.theta_deg + window_deg / 2.0)};
    PhaseCenterFit fa;
    PhaseCenterFit fb;
    try {
      fa = fit_phase_center(cut_a, local);
      fb = fit_phase_center(cut_b, local);
    } catch (const ValidationError& e) {
      throw ValidationError("window of " + format_double(window_deg) + " deg too narrow at theta " +
                            format_double(s.theta_deg) + ": " + e.what());
    }
    series.points.push_back({s.theta_deg, fa.x0 - fb.x0, fa.z0 - fb.z0});
  }
  if (series.points.empty()) throw ValidationError("no angles of cut A fall inside the common region");
  return series;
}

DisplacementStats displacement_stats(const DisplacementSeries& series) {
  const auto& pts = series.points;
  if (pts.empty()) throw ValidationError("displacement series is empty");
  DisplacementStats st;
  st.count = pts.size();
  const double n = static_cast<double>(pts.size());
  // Shifted by the first point so a constant series yields its value exactly.
  double dx = 0.0;
  double dz = 0.0;
  for (const auto& p : pts) {
    dx += p.dx0 - pts.front().dx0;
    dz += p.dz0 - pts.front().dz0;
  }
  st.mean_x0 = pts.front().dx0 + dx / n;
  st.mean_z0 = pts.front().dz0 + dz / n;
  if (pts.size() == 1) {
    st.sd_defined = false;
    return st;
  }
  double ssx = 0.0;
  double ssz = 0.0;
  for (const auto& p : pts) {
    ssx += (p.dx0 - st.mean_x0) * (p.dx0 - st.mean_x0);
    ssz += (p.dz0 - st.mean_z0) * (p.dz0 - st.mean_z0);
  }
  st.sd_x0 = std::sqrt(ssx / (n - 1.0));
  st.sd_z0 = std::sqrt(ssz / (n - 1.0));
  return st;
}

double wavelength_fraction(double displacement_m, double frequency_hz) {
  if (!(frequency_hz > 0.0)) throw ValidationError("frequency must be > 0");
  return displacement_m * frequency_hz / kSpeedOfLight;
}

}  // namespace rangekit
