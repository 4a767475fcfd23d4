#pragma once

// JSON views of domain types shared by the config and CLI sources.

#include "json.hpp"
#include "rangekit/ranging.hpp"
#include "rangekit/waveform.hpp"

namespace rangekit {

nlohmann::json to_json(const ToneSet& tones);
nlohmann::json to_json(const RangingScenario& scenario);

}  // namespace rangekit
