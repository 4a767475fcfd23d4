#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace rangekit {

// Angle convention: z is boresight, theta is measured from +z toward +x in
// the cut plane, so negative theta lies on the -x side.

struct FarFieldSample {
  double theta_deg = 0.0;
  double magnitude_db = 0.0;
  double phase_deg = 0.0;  // stored as measured; unwrapped at fit time

  bool operator==(const FarFieldSample&) const = default;
};

/// Pattern samples at one frequency along one phi cut.
struct FarFieldCut {
  double phi_cut_deg = 0.0;
  double frequency_hz = 0.0;
  std::vector<FarFieldSample> samples;

  /// At least three samples, strictly increasing theta, positive frequency.
  void validate() const;

  bool operator==(const FarFieldCut&) const = default;
};

// CSV layout: header `theta_deg,phi_deg,frequency_hz,magnitude_db,phase_deg`,
// one row per sample. Rows sharing (phi, frequency) form a cut; cuts are
// returned in order of first appearance.
std::vector<FarFieldCut> read_far_field_csv(std::istream& in);
std::vector<FarFieldCut> read_far_field_csv(const std::filesystem::path& path);
void write_far_field_csv(std::ostream& out, const std::vector<FarFieldCut>& cuts);
void write_far_field_csv(const std::filesystem::path& path, const std::vector<FarFieldCut>& cuts);

}  // namespace rangekit
