#include "rangekit/touchstone.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "rangekit/constants.hpp"
#include "rangekit/errors.hpp"
#include "rangekit/numfmt.hpp"

namespace rangekit {

namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

struct Options {
  double freq_scale = 1e9;  // Touchstone default unit is GHz
  TouchstoneFormat format = TouchstoneFormat::MA;
  double reference_ohms = 50.0;
};

Options parse_option_line(const std::string& line, const std::string& where) {
  std::istringstream ss(line.substr(1));
  std::vector<std::string> tokens;
  for (std::string tok; ss >> tok;) tokens.push_back(upper(tok));

  Options opt;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    if (t == "HZ") {
      opt.freq_scale = 1.0;
    } else if (t == "KHZ") {
      opt.freq_scale = 1e3;
    } else if (t == "MHZ") {
      opt.freq_scale = 1e6;
    } else if (t == "GHZ") {
      opt.freq_scale = 1e9;
    } else if (t == "S") {
    } else if (t == "Y" || t == "Z" || t == "G" || t == "H") {
      throw ValidationError(where + ": only S-parameter files are supported (got " + t + ")");
    } else if (t == "DB") {
      opt.format = TouchstoneFormat::DB;
    } else if (t == "MA") {
      opt.format = TouchstoneFormat::MA;
    } else if (t == "RI") {
      opt.format = TouchstoneFormat::RI;
    } else if (t == "R") {
      if (i + 1 >= tokens.size()) throw ValidationError(where + ": malformed option line, R without a value");
      opt.reference_ohms = parse_double(tokens[++i], where + " reference impedance");
      if (!(opt.reference_ohms > 0.0)) throw ValidationError(where + ": reference impedance must be > 0");
    } else {
      throw ValidationError(where + ": malformed option line, unexpected token '" + t + "'");
    }
  }
  return opt;
}

}  // namespace

std::string to_string(TouchstoneFormat fmt) {
  switch (fmt) {
    case TouchstoneFormat::DB: return "DB";
    case TouchstoneFormat::MA: return "MA";
    case TouchstoneFormat::RI: return "RI";
  }
  return "?";
}

void SParamTrace::validate() const {
  if (points.empty()) throw ValidationError("S11 trace has no data points");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].frequency_hz > points[i - 1].frequency_hz)) {
      throw ValidationError("S11 frequencies must be strictly increasing (at " +
                            format_double(points[i].frequency_hz) + " Hz)");
    }
  }
}

SParamTrace parse_touchstone(std::istream& in, const std::string& source_name) {
  std::optional<Options> opt;
  SParamTrace trace;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where = source_name + ":" + std::to_string(line_no);
    std::string line = raw.substr(0, raw.find('!'));
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first);

    if (line.front() == '[') throw ValidationError(where + ": Touchstone v2 keywords are not supported");
    if (line.front() == '#') {
      if (opt) throw ValidationError(where + ": more than one option line");
      opt = parse_option_line(line, where);
      continue;
    }
    if (!opt) throw ValidationError(where + ": data before the option line");

    std::istringstream ss(line);
    std::vector<std::string> tokens;
    for (std::string tok; ss >> tok;) tokens.push_back(tok);
    if (tokens.size() > 3) {
      throw ValidationError(where + ": " + std::to_string(tokens.size()) +
                            " values per row; only one-port (.s1p) data is supported");
    }
    if (tokens.size() != 3) throw ValidationError(where + ": expected 'frequency v1 v2'");
    const double f = parse_double(tokens[0], where + " frequency") * opt->freq_scale;
    const double a = parse_double(tokens[1], where + " value");
    const double b = parse_double(tokens[2], where + " value");

    SParamPoint p;
    p.frequency_hz = f;
    switch (opt->format) {
      case TouchstoneFormat::DB:
        p.s11_db = a;
        p.angle_deg = b;
        break;
      case TouchstoneFormat::MA:
        if (!(a > 0.0)) throw ValidationError(where + ": magnitude must be > 0 to express in dB");
        p.s11_db = 20.0 * std::log10(a);
        p.angle_deg = b;
        break;
      case TouchstoneFormat::RI: {
        const double mag = std::hypot(a, b);
        if (!(mag > 0.0)) throw ValidationError(where + ": zero reflection cannot be expressed in dB");
        p.s11_db = 20.0 * std::log10(mag);
        p.angle_deg = rad_to_deg(std::atan2(b, a));
        break;
      }
    }
    if (!trace.points.empty() && !(p.frequency_hz > trace.points.back().frequency_hz)) {
      throw ValidationError(where + ": frequencies must be strictly increasing");
    }
    trace.points.push_back(p);
  }
  if (!opt) throw ValidationError(source_name + ": missing option line");
  if (trace.points.empty()) throw ValidationError(source_name + ": no data rows");
  trace.source_format = opt->format;
  trace.reference_ohms = opt->reference_ohms;
  trace.validate();
  return trace;
}

SParamTrace load_touchstone(const std::filesystem::path& path) {
  const std::string ext = upper(path.extension().string());
  if (ext.size() >= 4 && ext.rfind(".S", 0) == 0 && ext.back() == 'P' && ext != ".S1P") {
    throw ValidationError(path.string() + ": multi-port Touchstone files are not supported");
  }
  std::ifstream in(path);
  if (!in) throw IoError("cannot open Touchstone file " + path.string());
  return parse_touchstone(in, path.string());
}

void write_touchstone(std::ostream& out, const SParamTrace& trace) {
  out << "! one-port reflection, dB-angle\n";
  out << "# HZ S DB R " << format_double(trace.reference_ohms) << '\n';
  for (const auto& p : trace.points) {
    out << format_double(p.frequency_hz) << ' ' << format_double(p.s11_db) << ' ' << format_double(p.angle_deg)
        << '\n';
  }
}

void write_touchstone(const std::filesystem::path& path, const SParamTrace& trace) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write Touchstone file " + path.string());
  write_touchstone(out, trace);
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace rangekit
