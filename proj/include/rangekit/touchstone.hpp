#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace rangekit {

enum class TouchstoneFormat { DB, MA, RI };

std::string to_string(TouchstoneFormat fmt);

struct SParamPoint {
  double frequency_hz = 0.0;
  double s11_db = 0.0;
  double angle_deg = 0.0;
};

/// One-port reflection sweep, frequencies strictly increasing.
struct SParamTrace {
  std::vector<SParamPoint> points;
  TouchstoneFormat source_format = TouchstoneFormat::DB;
  double reference_ohms = 50.0;

  void validate() const;
};

/// Touchstone v1 one-port reader. Accepts `# <HZ|KHZ|MHZ|GHZ> S <DB|MA|RI> R <ohms>`
/// (tokens in any order, case-insensitive); `!` starts a comment anywhere on a line.
SParamTrace parse_touchstone(std::istream& in, const std::string& source_name = "<stream>");
SParamTrace load_touchstone(const std::filesystem::path& path);

/// Writes dB-angle format in Hz with shortest round-trip numbers.
void write_touchstone(std::ostream& out, const SParamTrace& trace);
void write_touchstone(const std::filesystem::path& path, const SParamTrace& trace);

}  // namespace rangekit
