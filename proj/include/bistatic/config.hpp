#pragma once

#include <string>

#include <json.hpp>

#include "bistatic/analytic.hpp"
#include "bistatic/montecarlo.hpp"

namespace bistatic {

/// Flat run configuration. Angles are radians internally; `gamma` is linear.
struct RunConfig {
  RadarSystem system;
  Scene scene;
  SimConfig sim;
  double kappa = 50.0;
  double theta = 0.0;
  bool verbatim = false;
};

/// Accepted keys (unknown keys are rejected):
///   L kappa theta ptx a0 beamwidth beamwidth_tx beamwidth_rx wavelength ts bw
///   pulse_width rho sigma_t sigma_c gamma kappa_m verbatim trials seed mode cell
///   regime range_bin region
/// Angles accept a number (radians) or a string with a `deg` or `rad` suffix.
/// gamma accepts a number (linear) or a string with a `dB` suffix.
/// A document of the form {"config": {...}, ...} is unwrapped first.
void merge_config(RunConfig& cfg, const nlohmann::json& doc);

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config_file(const std::string& path);

nlohmann::json to_json(const RunConfig& cfg);

double parse_angle(const nlohmann::json& value);
double parse_threshold(const nlohmann::json& value);

/// Parses a bare command-line token into JSON: numbers stay numbers,
/// true/false become booleans, everything else a string.
nlohmann::json scalar_from_text(const std::string& text);

}  // namespace bistatic
