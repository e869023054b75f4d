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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "json.hpp"
#include "mtjrng/conditioning.hpp"
#include "mtjrng/mtj_array.hpp"

namespace mtjrng {

// Everything needed to rebuild an array bit-for-bit. See README for the
// JSON schema.
struct ArrayConfig {
  std::uint64_t master_seed = 2025;
  CycleConfig cycle;
  DeviceParams device_defaults;
  double v50_lo = 0.38;  // per-device v50 drawn uniformly from [lo, hi]
  double v50_hi = 0.42;
  std::vector<DeviceParams> devices;  // explicit list overrides the spread
  CalibrationOptions calibration;

  void validate() const;
};

// Drifting, slightly correlated defaults used for raw-stream experiments.
ArrayConfig default_array_config();

ArrayConfig array_config_from_json(const nlohmann::json& j, ArrayConfig base = default_array_config());
nlohmann::json to_json(const ArrayConfig& cfg);
ArrayConfig load_array_config(const std::filesystem::path& path);

// Per-device parameters after the v50 spread (or the explicit list).
std::vector<DeviceParams> expand_devices(const ArrayConfig& cfg);

// Expands devices, then takes v_perturb from the config or calibrates.
ArrayState build_array(const ArrayConfig& cfg);

// {"n": 8192, "m": 4096, "seed_hex": "..."}
ToeplitzConfig toeplitz_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ToeplitzConfig& cfg);
ToeplitzConfig load_toeplitz_config(const std::filesystem::path& path);

// Parses a JSON file; IoError if unreadable, FormatError if not JSON.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace mtjrng
