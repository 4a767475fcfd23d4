#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "rangekit/constants.hpp"
#include "rangekit/far_field.hpp"
#include "rangekit/touchstone.hpp"

namespace testsupport {

inline double wrap_deg(double deg) {
  double w = std::remainder(deg, 360.0);
  if (w <= -180.0) w += 360.0;
  return w;
}

/// Far-field phase of a point source at (x0, z0), wrapped to (-180, 180].
/// Optional Gaussian phase noise of `noise_deg` RMS.
inline rangekit::FarFieldCut point_source_cut(double x0, double z0, double freq, double theta_min = -30.0,
                                              double theta_max = 30.0, double step = 1.0, double phi0_rad = 0.3,
                                              double noise_deg = 0.0, unsigned seed = 0) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, noise_deg);
  const double k = 2.0 * M_PI * freq / 299792458.0;
  rangekit::FarFieldCut cut;
  cut.frequency_hz = freq;
  const int n = static_cast<int>(std::lround((theta_max - theta_min) / step));
  for (int i = 0; i <= n; ++i) {
    const double th = theta_min + i * step;
    const double t = th * M_PI / 180.0;
    double psi_deg = (phi0_rad + k * (x0 * std::sin(t) + z0 * std::cos(t))) * 180.0 / M_PI;
    if (noise_deg > 0.0) psi_deg += noise(gen);
    cut.samples.push_back({th, 5.0 - 0.001 * th * th, wrap_deg(psi_deg)});
  }
  return cut;
}

struct Dip {
  double fc;
  double fbw;
  double smin;
};

/// Parabolic dB dips clamped to a -2 dB baseline on the grid i * 1 MHz.
/// Each dip reaches -10 dB exactly at fc (1 +- fbw/2).
inline rangekit::SParamTrace three_dip_trace(const std::vector<Dip>& dips, long first_mhz = 1000,
                                             long last_mhz = 12000) {
  rangekit::SParamTrace trace;
  for (long i = first_mhz; i <= last_mhz; ++i) {
    const double f = static_cast<double>(i) * 1e6;
    double s = -2.0;
    for (const auto& d : dips) {
      const double u = (f - d.fc) / (d.fc * d.fbw / 2.0);
      s = std::min(s, d.smin + (-10.0 - d.smin) * u * u);
    }
    trace.points.push_back({f, s, 0.0});
  }
  return trace;
}

inline const std::vector<Dip>& reference_dips() {
  static const std::vector<Dip> dips = {
      {1.88e9, 0.0106, -24.70}, {9.56e9, 0.0397, -12.26}, {10.49e9, 0.0171, -24.67}};
  return dips;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("rangekit_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testsupport
