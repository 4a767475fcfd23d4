#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rangekit {

/// The 24 dimension labels of the multiband patch, A through X.
inline constexpr std::array<char, 24> kPatchLabels = {'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'J', 'K', 'L',
                                                      'M', 'N', 'O', 'P', 'Q', 'R', 'S', 'T', 'U', 'V', 'W', 'X'};

struct Substrate {
  double width_mm = 110.0;
  double height_mm = 100.0;
  double dielectric_constant = 3.66;
  double thickness_mm = 1.524;

  bool operator==(const Substrate&) const = default;
};

/// Flat label -> length record. How the labels compose into copper is only
/// defined by the layout drawing, so nothing here interprets them.
struct PatchDimensions {
  std::map<char, double> lengths_mm;
  Substrate substrate;

  bool operator==(const PatchDimensions&) const = default;
};

struct Violation {
  std::string rule;  // "positive", "largest", "substrate-fit", "substrate"
  std::string message;
};

/// The fabricated design (Rogers 4350B, 110 x 100 mm board).
PatchDimensions reference_dimensions();

/// Parses `{"A": 51.5, ..., "X": 0.7, "substrate": {...}}`. Substrate fields
/// default when omitted. Throws ValidationError naming a missing, unknown or
/// non-positive label.
PatchDimensions parse_dimensions(std::string_view json_text);
PatchDimensions load_dimensions(const std::filesystem::path& path);

std::string dimensions_to_json(const PatchDimensions& dims);
void save_dimensions(const std::filesystem::path& path, const PatchDimensions& dims);

/// Empty iff every label is positive, A is the largest length and every
/// length fits inside the smaller substrate side.
std::vector<Violation> validate(const PatchDimensions& dims);

}  // namespace rangekit
