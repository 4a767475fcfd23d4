#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "rangekit/beamform.hpp"
#include "rangekit/phase_center.hpp"
#include "rangekit/ranging.hpp"
#include "rangekit/waveform.hpp"

namespace rangekit {

struct WaveformConfig {
  ToneSet tones = ToneSet::two_tone(500e6);
  double sample_rate_hz = 4e9;
  double duration_s = 1e-6;
};

struct RangingConfig {
  double snr_db = 16.0;
  std::optional<double> true_delay_s;  // default: middle of the unambiguous window
  bool two_way = true;
  std::size_t trials = 10000;
};

struct PhaseCenterConfig {
  double window_deg = 10.0;
  BeamRegion beam;
};

struct BeamformConfig {
  std::size_t n_nodes = 10;
  double f_action_hz = 1.88e9;
  double sigma_range_m = 0.0016;
  std::size_t trials = 100000;
  bool two_way = false;
};

/// Scenario file. Every section is optional; unknown keys are rejected at
/// every level so typos fail loudly.
struct ScenarioConfig {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir;
  std::optional<WaveformConfig> waveform;
  std::optional<RangingConfig> ranging;
  std::optional<PhaseCenterConfig> phase_center;
  std::optional<BeamformConfig> beamform;

  /// Combines the waveform and ranging sections (defaults for absent ones).
  RangingScenario ranging_scenario() const;
  CoherenceScenario coherence_scenario() const;

  /// Every section with defaults filled in, as pretty JSON.
  std::string resolved_json() const;
};

ScenarioConfig parse_scenario(std::string_view json_text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace rangekit
