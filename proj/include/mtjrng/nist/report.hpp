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

#include <span>
#include <string>

#include "json.hpp"
#include "mtjrng/nist/suite.hpp"

namespace mtjrng::nist {

// Full report: configuration plus every per-sequence p-value (null when not
// applicable), proportions, thresholds, uniformity and verdicts.
nlohmann::json to_json(const SuiteReport& report);
nlohmann::json to_json(const SuiteConfig& cfg);
// Throws ConfigError on unknown keys or invalid values.
SuiteConfig suite_config_from_json(const nlohmann::json& j, SuiteConfig base = {});

// One row per test, one column per report (header = report sources).
// Single sub-test rows show "<P_T to 2 decimals>/<verdict>"; multi sub-test
// rows show the verdict only.
std::string to_csv(std::span<const SuiteReport> reports);

}  // namespace mtjrng::nist
