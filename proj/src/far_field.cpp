#include "rangekit/far_field.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "rangekit/errors.hpp"
#include "rangekit/numfmt.hpp"

namespace rangekit {

namespace {

constexpr const char* kHeader = "theta_deg,phi_deg,frequency_hz,magnitude_db,phase_deg";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

}  // namespace

void FarFieldCut::validate() const {
  if (!(frequency_hz > 0.0)) throw ValidationError("far-field cut frequency must be > 0");
  if (samples.size() < 3) throw ValidationError("far-field cut needs at least 3 samples");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].theta_deg > samples[i - 1].theta_deg)) {
      throw ValidationError("theta must be strictly increasing within a cut (phi " + format_double(phi_cut_deg) +
                            ", f " + format_double(frequency_hz) + " Hz, at theta " +
                            format_double(samples[i].theta_deg) + ")");
    }
  }
}

std::vector<FarFieldCut> read_far_field_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<FarFieldCut> cuts;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip(line);
    if (line.empty() || line.front() == '#') continue;
    if (!have_header) {
      if (line != kHeader) throw ValidationError(std::string("far-field CSV header must be '") + kHeader + "'");
      have_header = true;
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != 5) {
      throw ValidationError("far-field CSV line " + std::to_string(line_no) + ": expected 5 fields");
    }
    const std::string where = "far-field CSV line " + std::to_string(line_no);
    const double theta = parse_double(fields[0], where + " theta_deg");
    const double phi = parse_double(fields[1], where + " phi_deg");
    const double freq = parse_double(fields[2], where + " frequency_hz");
    const double mag = parse_double(fields[3], where + " magnitude_db");
    const double phase = parse_double(fields[4], where + " phase_deg");

    FarFieldCut* cut = nullptr;
    for (auto& c : cuts) {
      if (c.phi_cut_deg == phi && c.frequency_hz == freq) cut = &c;
    }
    if (cut == nullptr) {
      cuts.push_back({phi, freq, {}});
      cut = &cuts.back();
    }
    if (!cut->samples.empty() && !(theta > cut->samples.back().theta_deg)) {
      throw ValidationError(where + ": theta not strictly increasing within its cut");
    }
    cut->samples.push_back({theta, mag, phase});
  }
  if (!have_header) throw ValidationError("far-field CSV is empty");
  if (cuts.empty()) throw ValidationError("far-field CSV has no data rows");
  for (const auto& c : cuts) c.validate();
  return cuts;
}

std::vector<FarFieldCut> read_far_field_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open far-field file " + path.string());
  return read_far_field_csv(in);
}

void write_far_field_csv(std::ostream& out, const std::vector<FarFieldCut>& cuts) {
  out << kHeader << '\n';
  for (const auto& c : cuts) {
    for (const auto& s : c.samples) {
      out << format_double(s.theta_deg) << ',' << format_double(c.phi_cut_deg) << ','
          << format_double(c.frequency_hz) << ',' << format_double(s.magnitude_db) << ','
          << format_double(s.phase_deg) << '\n';
    }
  }
}

void write_far_field_csv(const std::filesystem::path& path, const std::vector<FarFieldCut>& cuts) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write far-field file " + path.string());
  write_far_field_csv(out, cuts);
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace rangekit
