// Copyright 2026 The mtjrng Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mtjrng/config.hpp"

#include <set>
#include <string>

#include "mtjrng/errors.hpp"

namespace mtjrng {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

DeviceParams device_from_json(const json& j, DeviceParams p, const std::string& where) {
  reject_unknown(j, {"device_id", "v50", "slope_w", "r_p", "r_ap", "drift_sigma", "drift_reversion", "corr_rho"},
                 where);
  p.device_id = j.value("device_id", p.device_id);
  p.v50 = j.value("v50", p.v50);
  p.slope_w = j.value("slope_w", p.slope_w);
  p.r_p = j.value("r_p", p.r_p);
  p.r_ap = j.value("r_ap", p.r_ap);
  p.drift_sigma = j.value("drift_sigma", p.drift_sigma);
  p.drift_reversion = j.value("drift_reversion", p.drift_reversion);
  p.corr_rho = j.value("corr_rho", p.corr_rho);
  return p;
}

json device_to_json(const DeviceParams& p, bool with_id) {
  json j = {{"v50", p.v50},         {"slope_w", p.slope_w},
            {"r_p", p.r_p},         {"r_ap", p.r_ap},
            {"drift_sigma", p.drift_sigma}, {"drift_reversion", p.drift_reversion},
            {"corr_rho", p.corr_rho}};
  if (with_id) j["device_id"] = p.device_id;
  return j;
}

}  // namespace

void ArrayConfig::validate() const {
  cycle.validate();
  if (devices.empty()) {
    device_defaults.validate();
    if (!(v50_lo <= v50_hi)) throw ConfigError("v50_range must be [lo, hi] with lo <= hi");
  } else {
    if (devices.size() != static_cast<std::size_t>(cycle.n_devices)) {
      throw ConfigError("devices lists " + std::to_string(devices.size()) + " entries but n_devices is " +
                        std::to_string(cycle.n_devices));
    }
    std::set<int> ids;
    for (const auto& d : devices) {
      d.validate();
      if (!ids.insert(d.device_id).second) throw ConfigError("duplicate device_id " + std::to_string(d.device_id));
    }
  }
  if (!cycle.v_perturb.empty() && cycle.v_perturb.size() != static_cast<std::size_t>(cycle.n_devices)) {
    throw ConfigError("v_perturb needs one entry per device");
  }
  const auto& c = calibration;
  if (!(c.target_p > 0 && c.target_p < 1)) throw ConfigError("calibration target_p must lie in (0, 1)");
  if (c.pulses_per_estimate <= 0 || c.max_iterations <= 0) {
    throw ConfigError("calibration pulses and iterations must be positive");
  }
  if (!(c.tolerance > 0) || !(c.v_min < c.v_max)) throw ConfigError("calibration tolerance/range invalid");
}

ArrayConfig default_array_config() {
  ArrayConfig cfg;
  cfg.device_defaults.drift_sigma = 2e-5;
  cfg.device_defaults.drift_reversion = 2e-5;
  cfg.device_defaults.corr_rho = 0.02;
  return cfg;
}

ArrayConfig array_config_from_json(const json& j, ArrayConfig cfg) {
  reject_unknown(j, {"master_seed", "n_devices", "cycle", "device_defaults", "v50_range", "devices", "calibration"},
                 "array config");
  try {
    cfg.master_seed = j.value("master_seed", cfg.master_seed);
    cfg.cycle.n_devices = j.value("n_devices", cfg.cycle.n_devices);
    if (j.contains("cycle")) {
      const auto& c = j.at("cycle");
      reject_unknown(c, {"v_reset", "v_perturb", "pulse_width", "v_th", "cycle_hz"}, "cycle");
      cfg.cycle.v_reset = c.value("v_reset", cfg.cycle.v_reset);
      cfg.cycle.v_perturb = c.value("v_perturb", cfg.cycle.v_perturb);
      cfg.cycle.pulse_width = c.value("pulse_width", cfg.cycle.pulse_width);
      cfg.cycle.v_th = c.value("v_th", cfg.cycle.v_th);
      cfg.cycle.cycle_hz = c.value("cycle_hz", cfg.cycle.cycle_hz);
    }
    if (j.contains("device_defaults")) {
      cfg.device_defaults = device_from_json(j.at("device_defaults"), cfg.device_defaults, "device_defaults");
    }
    if (j.contains("v50_range")) {
      const auto range = j.at("v50_range").get<std::vector<double>>();
      if (range.size() != 2) throw ConfigError("v50_range must have two entries");
      cfg.v50_lo = range[0];
      cfg.v50_hi = range[1];
    }
    if (j.contains("devices")) {
      cfg.devices.clear();
      int next_id = 0;
      for (const auto& d : j.at("devices")) {
        DeviceParams base = cfg.device_defaults;
        base.device_id = next_id;
        cfg.devices.push_back(device_from_json(d, base, "devices[" + std::to_string(next_id) + "]"));
        ++next_id;
      }
      if (!j.contains("n_devices")) cfg.cycle.n_devices = static_cast<int>(cfg.devices.size());
    }
    if (j.contains("calibration")) {
      const auto& c = j.at("calibration");
      reject_unknown(c, {"target_p", "pulses_per_estimate", "tolerance", "max_iterations", "v_min", "v_max"},
                     "calibration");
      auto& o = cfg.calibration;
      o.target_p = c.value("target_p", o.target_p);
      o.pulses_per_estimate = c.value("pulses_per_estimate", o.pulses_per_estimate);
      o.tolerance = c.value("tolerance", o.tolerance);
      o.max_iterations = c.value("max_iterations", o.max_iterations);
      o.v_min = c.value("v_min", o.v_min);
      o.v_max = c.value("v_max", o.v_max);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("array config: ") + e.what());
  }
  try {
    cfg.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("array config: ") + e.what());
  }
  return cfg;
}

json to_json(const ArrayConfig& cfg) {
  json j = {
      {"master_seed", cfg.master_seed},
      {"n_devices", cfg.cycle.n_devices},
      {"cycle",
       {{"v_reset", cfg.cycle.v_reset},
        {"pulse_width", cfg.cycle.pulse_width},
        {"v_th", cfg.cycle.v_th},
        {"cycle_hz", cfg.cycle.cycle_hz}}},
      {"device_defaults", device_to_json(cfg.device_defaults, false)},
      {"v50_range", {cfg.v50_lo, cfg.v50_hi}},
      {"calibration",
       {{"target_p", cfg.calibration.target_p},
        {"pulses_per_estimate", cfg.calibration.pulses_per_estimate},
        {"tolerance", cfg.calibration.tolerance},
        {"max_iterations", cfg.calibration.max_iterations},
        {"v_min", cfg.calibration.v_min},
        {"v_max", cfg.calibration.v_max}}},
  };
  if (!cfg.cycle.v_perturb.empty()) j["cycle"]["v_perturb"] = cfg.cycle.v_perturb;
  if (!cfg.devices.empty()) {
    j["devices"] = json::array();
    for (const auto& d : cfg.devices) j["devices"].push_back(device_to_json(d, true));
  }
  return j;
}

json read_json_file(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  try {
    return json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

ArrayConfig load_array_config(const std::filesystem::path& path) {
  return array_config_from_json(read_json_file(path));
}

std::vector<DeviceParams> expand_devices(const ArrayConfig& cfg) {
  cfg.validate();
  if (!cfg.devices.empty()) return cfg.devices;
  std::vector<DeviceParams> out;
  out.reserve(static_cast<std::size_t>(cfg.cycle.n_devices));
  for (int i = 0; i < cfg.cycle.n_devices; ++i) {
    DeviceParams p = cfg.device_defaults;
    p.device_id = i;
    auto engine = make_device_engine(cfg.master_seed, i, Substream::kSpread);
    p.v50 = cfg.v50_lo + (cfg.v50_hi - cfg.v50_lo) * unit_uniform(engine);
    out.push_back(p);
  }
  return out;
}

ArrayState build_array(const ArrayConfig& cfg) {
  ArrayState array;
  array.master_seed = cfg.master_seed;
  array.devices = expand_devices(cfg);
  if (!cfg.cycle.v_perturb.empty()) {
    array.v_perturb = cfg.cycle.v_perturb;
  } else {
    calibrate_array(array, cfg.calibration);
  }
  return array;
}

ToeplitzConfig toeplitz_config_from_json(const json& j) {
  reject_unknown(j, {"n", "m", "seed_hex"}, "Toeplitz config");
  if (!j.contains("seed_hex")) throw ConfigError("Toeplitz config needs seed_hex");
  try {
    return ToeplitzConfig::from_hex(j.value("n", std::size_t{8192}), j.value("m", std::size_t{4096}),
                                    j.at("seed_hex").get<std::string>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("Toeplitz config: ") + e.what());
  }
}

json to_json(const ToeplitzConfig& cfg) {
  return {{"n", cfg.n}, {"m", cfg.m}, {"seed_hex", cfg.seed_hex()}};
}

ToeplitzConfig load_toeplitz_config(const std::filesystem::path& path) {
  return toeplitz_config_from_json(read_json_file(path));
}

}  // namespace mtjrng
