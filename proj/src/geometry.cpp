#include "rangekit/geometry.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rangekit/errors.hpp"
#include "rangekit/numfmt.hpp"

namespace rangekit {

using nlohmann::json;

namespace {

double number_field(const json& j, const std::string& key) {
  if (!j.is_number()) throw ValidationError("dimension '" + key + "' must be a number");
  return j.get<double>();
}

}  // namespace

PatchDimensions reference_dimensions() {
  PatchDimensions d;
  d.lengths_mm = {{'A', 51.5}, {'B', 38.83}, {'C', 24.5}, {'D', 24.5}, {'E', 3.34},  {'F', 0.83},
                  {'G', 1.0},  {'H', 8.0},   {'I', 6.5},  {'J', 1.0},  {'K', 12.2},  {'L', 7.4},
                  {'M', 6.15}, {'N', 2.155}, {'O', 1.68}, {'P', 1.1},  {'Q', 0.7},   {'R', 4.1},
                  {'S', 6.5},  {'T', 0.5},   {'U', 1.7},  {'V', 1.6},  {'W', 2.85},  {'X', 0.7}};
  return d;
}

PatchDimensions parse_dimensions(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("dimensions file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("dimensions file must hold a JSON object");

  PatchDimensions d;
  for (const auto& [key, value] : j.items()) {
    if (key == "substrate") continue;
    if (key.size() != 1 || std::find(kPatchLabels.begin(), kPatchLabels.end(), key[0]) == kPatchLabels.end()) {
      throw ValidationError("unknown dimension label '" + key + "'");
    }
    const double v = number_field(value, key);
    if (!(v > 0.0)) throw ValidationError("dimension " + key + " must be > 0 (got " + format_double(v) + ")");
    d.lengths_mm[key[0]] = v;
  }
  for (char label : kPatchLabels) {
    if (!d.lengths_mm.contains(label)) throw ValidationError(std::string("missing dimension label ") + label);
  }
  if (j.contains("substrate")) {
    const json& s = j["substrate"];
    if (!s.is_object()) throw ValidationError("'substrate' must be an object");
    for (const auto& [key, value] : s.items()) {
      const double v = number_field(value, "substrate." + key);
      if (key == "width_mm") {
        d.substrate.width_mm = v;
      } else if (key == "height_mm") {
        d.substrate.height_mm = v;
      } else if (key == "dielectric_constant") {
        d.substrate.dielectric_constant = v;
      } else if (key == "thickness_mm") {
        d.substrate.thickness_mm = v;
      } else {
        throw ValidationError("unknown substrate field '" + key + "'");
      }
    }
  }
  return d;
}

PatchDimensions load_dimensions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dimensions file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_dimensions(buf.str());
}

std::string dimensions_to_json(const PatchDimensions& dims) {
  json j = json::object();
  for (const auto& [label, v] : dims.lengths_mm) j[std::string(1, label)] = v;
  j["substrate"] = {{"width_mm", dims.substrate.width_mm},
                    {"height_mm", dims.substrate.height_mm},
                    {"dielectric_constant", dims.substrate.dielectric_constant},
                    {"thickness_mm", dims.substrate.thickness_mm}};
  return j.dump(2) + "\n";
}

void save_dimensions(const std::filesystem::path& path, const PatchDimensions& dims) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write dimensions file " + path.string());
  out << dimensions_to_json(dims);
  if (!out) throw IoError("error writing " + path.string());
}

std::vector<Violation> validate(const PatchDimensions& dims) {
  std::vector<Violation> out;
  const Substrate& s = dims.substrate;
  if (!(s.width_mm > 0.0) || !(s.height_mm > 0.0) || !(s.thickness_mm > 0.0) || !(s.dielectric_constant >= 1.0)) {
    out.push_back({"substrate", "substrate sizes must be > 0 and dielectric constant >= 1"});
  }
  for (char label : kPatchLabels) {
    if (!dims.lengths_mm.contains(label)) out.push_back({"positive", std::string("label ") + label + " is missing"});
  }
  for (const auto& [label, v] : dims.lengths_mm) {
    if (!(v > 0.0)) out.push_back({"positive", std::string(1, label) + " = " + format_double(v) + " mm is not > 0"});
  }
  if (auto a = dims.lengths_mm.find('A'); a != dims.lengths_mm.end()) {
    for (const auto& [label, v] : dims.lengths_mm) {
      if (label != 'A' && v > a->second) {
        out.push_back({"largest", std::string(1, label) + " = " + format_double(v) + " mm exceeds A = " +
                                      format_double(a->second) + " mm"});
      }
    }
  }
  const double limit = std::min(s.width_mm, s.height_mm);
  for (const auto& [label, v] : dims.lengths_mm) {
    if (!(v < limit)) {
      out.push_back({"substrate-fit", std::string(1, label) + " = " + format_double(v) +
                                          " mm does not fit the substrate (min side " + format_double(limit) + " mm)"});
    }
  }
  return out;
}

}  // namespace rangekit
