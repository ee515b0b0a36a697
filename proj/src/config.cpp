#include "bistatic/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include "bistatic/constants.hpp"
#include "bistatic/error.hpp"

namespace bistatic {

using nlohmann::json;

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

double number_from(const std::string& text, const std::string& key) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') throw Error(ErrorKind::Config, "cannot parse '" + text + "' for " + key);
  return v;
}

double as_number(const json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return number_from(v.get<std::string>(), key);
  throw Error(ErrorKind::Config, key + " must be a number");
}

std::uint64_t as_count(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    char* end = nullptr;
    const unsigned long long n = std::strtoull(s.c_str(), &end, 10);
    if (end != s.c_str() && *end == '\0' && s.find('-') == std::string::npos) return n;
  }
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0.0 && d == std::floor(d)) return static_cast<std::uint64_t>(d);
  }
  throw Error(ErrorKind::Config, key + " must be a nonnegative integer");
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw Error(ErrorKind::Config, key + " must be a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& key) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
  }
  throw Error(ErrorKind::Config, key + " must be a boolean");
}

}  // namespace

double parse_angle(const json& value) {
  if (value.is_number()) return value.get<double>();
  const std::string s = as_string(value, "angle");
  if (ends_with(s, "deg")) return degrees(number_from(s.substr(0, s.size() - 3), "angle"));
  if (ends_with(s, "rad")) return number_from(s.substr(0, s.size() - 3), "angle");
  return number_from(s, "angle");
}

double parse_threshold(const json& value) {
  if (value.is_number()) return value.get<double>();
  const std::string s = as_string(value, "gamma");
  if (ends_with(s, "dB")) return std::pow(10.0, number_from(s.substr(0, s.size() - 2), "gamma") / 10.0);
  return number_from(s, "gamma");
}

json scalar_from_text(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() && *end == '\0') {
    if (text.find_first_of(".eE") == std::string::npos && text.find('-') == std::string::npos) {
      return static_cast<std::uint64_t>(std::strtoull(text.c_str(), nullptr, 10));
    }
    return v;
  }
  return text;
}

void merge_config(RunConfig& cfg, const json& input) {
  if (!input.is_object()) throw Error(ErrorKind::Config, "configuration must be a JSON object");
  const json& doc = input.contains("config") ? input.at("config") : input;
  if (!doc.is_object()) throw Error(ErrorKind::Config, "'config' must be a JSON object");
  if (&doc != &input) {
    for (const auto& [key, _] : input.items()) {
      if (key != "config" && key != "result") throw Error(ErrorKind::Config, "unknown top-level key '" + key + "'");
    }
  }

  auto& sys = cfg.system;
  auto& scene = cfg.scene;
  auto& sim = cfg.sim;
  for (const auto& [key, v] : doc.items()) {
    if (key == "L") scene.layout.baseline = as_number(v, key);
    else if (key == "kappa") cfg.kappa = as_number(v, key);
    else if (key == "theta") cfg.theta = parse_angle(v);
    else if (key == "ptx") sys.transmit_power = as_number(v, key);
    else if (key == "a0") sys.gain_constant = as_number(v, key);
    else if (key == "beamwidth") sys.beamwidth_tx = sys.beamwidth_rx = parse_angle(v);
    else if (key == "beamwidth_tx") sys.beamwidth_tx = parse_angle(v);
    else if (key == "beamwidth_rx") sys.beamwidth_rx = parse_angle(v);
    else if (key == "wavelength") sys.wavelength = as_number(v, key);
    else if (key == "ts") sys.noise_temperature = as_number(v, key);
    else if (key == "bw") sys.bandwidth = as_number(v, key);
    else if (key == "pulse_width") {
      if (v.is_null()) sys.pulse_width.reset();
      else sys.pulse_width = as_number(v, key);
    } else if (key == "rho") scene.clutter_density = as_number(v, key);
    else if (key == "sigma_t") scene.target_rcs = as_number(v, key);
    else if (key == "sigma_c") scene.clutter_rcs = as_number(v, key);
    else if (key == "gamma") scene.threshold = parse_threshold(v);
    else if (key == "kappa_m") {
      if (v.is_null()) sim.analytic.kappa_m.reset();
      else sim.analytic.kappa_m = as_number(v, key);
    } else if (key == "verbatim") cfg.verbatim = as_bool(v, key);
    else if (key == "trials") sim.trials = as_count(v, key);
    else if (key == "seed") sim.seed = as_count(v, key);
    else if (key == "mode") {
      const auto s = as_string(v, key);
      if (s == "geometric") sim.mode = SimMode::Geometric;
      else if (s == "oracle") sim.mode = SimMode::Oracle;
      else throw Error(ErrorKind::Config, "mode must be geometric|oracle");
    } else if (key == "cell") {
      const auto s = as_string(v, key);
      if (s == "beam") sim.cell = CellKind::Beamwidth;
      else if (s == "range") sim.cell = CellKind::Range;
      else throw Error(ErrorKind::Config, "cell must be beam|range");
    } else if (key == "regime") {
      const auto s = as_string(v, key);
      if (s == "auto") sim.regime = RegimeChoice::Auto;
      else if (s == "cosite") sim.regime = RegimeChoice::CoSite;
      else if (s == "lemniscate") sim.regime = RegimeChoice::Lemniscate;
      else throw Error(ErrorKind::Config, "regime must be auto|cosite|lemniscate");
    } else if (key == "range_bin") {
      const auto s = as_string(v, key);
      if (s == "half") sim.range_bin = RangeBinRule::HalfWidth;
      else if (s == "full") sim.range_bin = RangeBinRule::FullWidth;
      else throw Error(ErrorKind::Config, "range_bin must be half|full");
    } else if (key == "region") {
      if (!v.is_array() || v.size() != 4) throw Error(ErrorKind::Config, "region must be [x_min, x_max, y_min, y_max]");
      sim.region = {as_number(v[0], key), as_number(v[1], key), as_number(v[2], key), as_number(v[3], key)};
    } else {
      throw Error(ErrorKind::Config, "unknown configuration key '" + key + "'");
    }
  }
  if (cfg.verbatim) {
    sim.analytic.gamma = GammaPolicy::Verbatim;
    sim.analytic.range_area = RangeArea::Verbatim;
  } else {
    sim.analytic.gamma = GammaPolicy::Consistent;
    sim.analytic.range_area = RangeArea::Derived;
  }
}

RunConfig parse_config(const json& doc) {
  RunConfig cfg;
  merge_config(cfg, doc);
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, "invalid JSON in '" + path + "': " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& cfg) {
  const auto& sys = cfg.system;
  const auto& scene = cfg.scene;
  const auto& sim = cfg.sim;
  json j;
  j["L"] = scene.layout.baseline;
  j["kappa"] = cfg.kappa;
  j["theta"] = cfg.theta;
  j["ptx"] = sys.transmit_power;
  j["a0"] = sys.gain_constant;
  j["beamwidth_tx"] = sys.beamwidth_tx;
  j["beamwidth_rx"] = sys.beamwidth_rx;
  j["wavelength"] = sys.wavelength;
  j["ts"] = sys.noise_temperature;
  j["bw"] = sys.bandwidth;
  j["pulse_width"] = sys.pulse_width ? json(*sys.pulse_width) : json(nullptr);
  j["rho"] = scene.clutter_density;
  j["sigma_t"] = scene.target_rcs;
  j["sigma_c"] = scene.clutter_rcs;
  j["gamma"] = scene.threshold;
  j["kappa_m"] = sim.analytic.kappa_m ? json(*sim.analytic.kappa_m) : json(nullptr);
  j["verbatim"] = cfg.verbatim;
  j["trials"] = sim.trials;
  j["seed"] = sim.seed;
  j["mode"] = std::string(to_string(sim.mode));
  j["cell"] = std::string(to_string(sim.cell));
  j["regime"] = std::string(to_string(sim.regime));
  j["range_bin"] = std::string(to_string(sim.range_bin));
  j["region"] = {sim.region.x_min, sim.region.x_max, sim.region.y_min, sim.region.y_max};
  return j;
}

}  // namespace bistatic
