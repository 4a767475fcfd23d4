#include "rangekit/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "config_json.hpp"
#include "rangekit/errors.hpp"

namespace rangekit {

using nlohmann::json;

namespace {

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ValidationError("unknown key '" + key + "' in " + where);
  }
}

double get_number(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ValidationError(where + "." + key + " must be a number");
  return v.get<double>();
}

std::size_t get_count(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number_unsigned()) throw ValidationError(where + "." + key + " must be a non-negative integer");
  return v.get<std::size_t>();
}

bool get_bool(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_boolean()) throw ValidationError(where + "." + key + " must be true or false");
  return v.get<bool>();
}

WaveformConfig parse_waveform(const json& j) {
  const std::string where = "waveform";
  check_keys(j, {"tones", "separation_hz", "sample_rate_hz", "duration_s"}, where);
  WaveformConfig w;
  if (j.contains("tones") && j.contains("separation_hz")) {
    throw ValidationError("waveform: give either 'tones' or 'separation_hz', not both");
  }
  if (j.contains("tones")) {
    const json& arr = j["tones"];
    if (!arr.is_array()) throw ValidationError("waveform.tones must be an array");
    std::vector<Tone> tones;
    for (const auto& t : arr) {
      check_keys(t, {"frequency_hz", "amplitude", "phase_rad"}, "waveform.tones[]");
      Tone tone;
      tone.frequency_hz = get_number(t, "frequency_hz", "waveform.tones[]");
      if (t.contains("amplitude")) tone.amplitude = get_number(t, "amplitude", "waveform.tones[]");
      if (t.contains("phase_rad")) tone.phase_rad = get_number(t, "phase_rad", "waveform.tones[]");
      tones.push_back(tone);
    }
    w.tones = ToneSet(std::move(tones));
  } else if (j.contains("separation_hz")) {
    w.tones = ToneSet::two_tone(get_number(j, "separation_hz", where));
  }
  if (j.contains("sample_rate_hz")) w.sample_rate_hz = get_number(j, "sample_rate_hz", where);
  if (j.contains("duration_s")) w.duration_s = get_number(j, "duration_s", where);
  return w;
}

RangingConfig parse_ranging(const json& j) {
  const std::string where = "ranging";
  check_keys(j, {"snr_db", "true_delay_s", "two_way", "trials"}, where);
  RangingConfig r;
  if (j.contains("snr_db")) r.snr_db = get_number(j, "snr_db", where);
  if (j.contains("true_delay_s")) r.true_delay_s = get_number(j, "true_delay_s", where);
  if (j.contains("two_way")) r.two_way = get_bool(j, "two_way", where);
  if (j.contains("trials")) r.trials = get_count(j, "trials", where);
  return r;
}

PhaseCenterConfig parse_phase_center(const json& j) {
  const std::string where = "phase_center";
  check_keys(j, {"window_deg", "beam_deg"}, where);
  PhaseCenterConfig p;
  if (j.contains("window_deg")) p.window_deg = get_number(j, "window_deg", where);
  if (j.contains("beam_deg")) {
    const json& b = j["beam_deg"];
    if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number()) {
      throw ValidationError("phase_center.beam_deg must be [min, max]");
    }
    p.beam = {b[0].get<double>(), b[1].get<double>()};
  }
  return p;
}

BeamformConfig parse_beamform(const json& j) {
  const std::string where = "beamform";
  check_keys(j, {"n_nodes", "f_action_hz", "sigma_range_m", "trials", "two_way"}, where);
  BeamformConfig b;
  if (j.contains("n_nodes")) b.n_nodes = get_count(j, "n_nodes", where);
  if (j.contains("f_action_hz")) b.f_action_hz = get_number(j, "f_action_hz", where);
  if (j.contains("sigma_range_m")) b.sigma_range_m = get_number(j, "sigma_range_m", where);
  if (j.contains("trials")) b.trials = get_count(j, "trials", where);
  if (j.contains("two_way")) b.two_way = get_bool(j, "two_way", where);
  return b;
}

}  // namespace

json to_json(const ToneSet& tones) {
  json arr = json::array();
  for (const auto& t : tones.tones()) {
    arr.push_back({{"frequency_hz", t.frequency_hz}, {"amplitude", t.amplitude}, {"phase_rad", t.phase_rad}});
  }
  return arr;
}

json to_json(const RangingScenario& s) {
  return {{"tones", to_json(s.tones)},     {"snr_db", s.snr_db},
          {"true_delay_s", s.true_delay_s}, {"two_way", s.two_way},
          {"sample_rate_hz", s.sample_rate_hz}, {"duration_s", s.duration_s},
          {"seed", s.seed}};
}

RangingScenario ScenarioConfig::ranging_scenario() const {
  const WaveformConfig w = waveform.value_or(WaveformConfig{});
  const RangingConfig r = ranging.value_or(RangingConfig{});
  RangingScenario s;
  s.tones = w.tones;
  s.sample_rate_hz = w.sample_rate_hz;
  s.duration_s = w.duration_s;
  s.snr_db = r.snr_db;
  s.two_way = r.two_way;
  s.seed = seed.value_or(1);
  s.true_delay_s = r.true_delay_s.value_or(s.unambiguous_window() / 2.0);
  return s;
}

CoherenceScenario ScenarioConfig::coherence_scenario() const {
  const BeamformConfig b = beamform.value_or(BeamformConfig{});
  CoherenceScenario c;
  c.n_nodes = b.n_nodes;
  c.f_action_hz = b.f_action_hz;
  c.sigma_range_m = b.sigma_range_m;
  c.trials = b.trials;
  c.two_way = b.two_way;
  c.seed = seed.value_or(1);
  return c;
}

std::string ScenarioConfig::resolved_json() const {
  const WaveformConfig w = waveform.value_or(WaveformConfig{});
  const RangingConfig r = ranging.value_or(RangingConfig{});
  const PhaseCenterConfig p = phase_center.value_or(PhaseCenterConfig{});
  const BeamformConfig b = beamform.value_or(BeamformConfig{});
  json j;
  j["seed"] = seed.value_or(1);
  j["output_dir"] = output_dir.value_or(".");
  j["waveform"] = {{"tones", to_json(w.tones)}, {"sample_rate_hz", w.sample_rate_hz}, {"duration_s", w.duration_s}};
  j["ranging"] = {{"snr_db", r.snr_db},
                  {"true_delay_s", ranging_scenario().true_delay_s},
                  {"two_way", r.two_way},
                  {"trials", r.trials}};
  j["phase_center"] = {{"window_deg", p.window_deg}, {"beam_deg", {p.beam.min_deg, p.beam.max_deg}}};
  j["beamform"] = {{"n_nodes", b.n_nodes},
                   {"f_action_hz", b.f_action_hz},
                   {"sigma_range_m", b.sigma_range_m},
                   {"trials", b.trials},
                   {"two_way", b.two_way}};
  return j.dump(2);
}

ScenarioConfig parse_scenario(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scenario is not valid JSON: ") + e.what());
  }
  check_keys(j, {"seed", "output_dir", "waveform", "ranging", "phase_center", "beamform"}, "scenario");
  ScenarioConfig c;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ValidationError("seed must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) throw ValidationError("output_dir must be a string");
    c.output_dir = j["output_dir"].get<std::string>();
  }
  if (j.contains("waveform")) c.waveform = parse_waveform(j["waveform"]);
  if (j.contains("ranging")) c.ranging = parse_ranging(j["ranging"]);
  if (j.contains("phase_center")) c.phase_center = parse_phase_center(j["phase_center"]);
  if (j.contains("beamform")) c.beamform = parse_beamform(j["beamform"]);
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace rangekit
