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

#include "mtjrng/nist/report.hpp"

#include <cstdio>
#include <set>

#include "mtjrng/errors.hpp"

namespace mtjrng::nist {

nlohmann::json to_json(const SuiteConfig& cfg) {
  return {
      {"sequence_length", cfg.sequence_length},
      {"n_sequences", cfg.n_sequences},
      {"alpha", cfg.alpha},
      {"block_frequency_m", cfg.block_frequency_m},
      {"non_overlapping_m", cfg.non_overlapping_m},
      {"overlapping_m", cfg.overlapping_m},
      {"overlapping_block", cfg.overlapping_block},
      {"universal_l", cfg.universal_l},
      {"universal_q", cfg.universal_q},
      {"linear_complexity_m", cfg.linear_complexity_m},
      {"serial_m", cfg.serial_m},
      {"approximate_entropy_m", cfg.approximate_entropy_m},
  };
}

SuiteConfig suite_config_from_json(const nlohmann::json& j, SuiteConfig cfg) {
  if (!j.is_object()) throw ConfigError("NIST config must be a JSON object");
  static const std::set<std::string> kKnown = {
      "sequence_length", "n_sequences", "alpha", "block_frequency_m", "non_overlapping_m",
      "overlapping_m", "overlapping_block", "universal_l", "universal_q", "linear_complexity_m",
      "serial_m", "approximate_entropy_m"};
  for (const auto& [key, _] : j.items()) {
    if (!kKnown.count(key)) throw ConfigError("unknown NIST config key '" + key + "'");
  }
  try {
    cfg.sequence_length = j.value("sequence_length", cfg.sequence_length);
    cfg.n_sequences = j.value("n_sequences", cfg.n_sequences);
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.block_frequency_m = j.value("block_frequency_m", cfg.block_frequency_m);
    cfg.non_overlapping_m = j.value("non_overlapping_m", cfg.non_overlapping_m);
    cfg.overlapping_m = j.value("overlapping_m", cfg.overlapping_m);
    cfg.overlapping_block = j.value("overlapping_block", cfg.overlapping_block);
    cfg.universal_l = j.value("universal_l", cfg.universal_l);
    cfg.universal_q = j.value("universal_q", cfg.universal_q);
    cfg.linear_complexity_m = j.value("linear_complexity_m", cfg.linear_complexity_m);
    cfg.serial_m = j.value("serial_m", cfg.serial_m);
    cfg.approximate_entropy_m = j.value("approximate_entropy_m", cfg.approximate_entropy_m);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("NIST config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

nlohmann::json to_json(const SuiteReport& report) {
  nlohmann::json tests = nlohmann::json::array();
  for (const auto& t : report.tests) {
    nlohmann::json subs = nlohmann::json::array();
    for (const auto& s : t.subtests) {
      nlohmann::json p = nlohmann::json::array();
      for (const auto& v : s.p_values) p.push_back(v ? nlohmann::json(*v) : nlohmann::json(nullptr));
      nlohmann::json entry = {
          {"label", s.label},
          {"p_values", std::move(p)},
          {"applicable", s.applicable},
          {"passes", s.passes},
          {"proportion", s.proportion},
          {"threshold", s.threshold},
          {"verdict", to_string(s.verdict)},
      };
      if (s.uniformity) {
        entry["uniformity"] = s.uniformity->p_value;
        entry["low_sample_warning"] = s.uniformity->low_sample;
      } else {
        entry["uniformity"] = nullptr;
      }
      subs.push_back(std::move(entry));
    }
    tests.push_back({{"test", test_key(t.id)},
                     {"name", test_display_name(t.id)},
                     {"verdict", to_string(t.verdict)},
                     {"subtests", std::move(subs)}});
  }
  return {{"source", report.source},
          {"config", to_json(report.config)},
          {"all_passed", report.all_passed()},
          {"tests", std::move(tests)}};
}

std::string to_csv(std::span<const SuiteReport> reports) {
  std::string out = "test";
  for (const auto& r : reports) out += "," + r.source;
  out += "\n";
  for (TestId id : kAllTests) {
    out += test_display_name(id);
    for (const auto& r : reports) {
      const auto& t = r.at(id);
      out += ",";
      if (t.subtests.size() == 1 && t.subtests[0].uniformity) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f/", t.subtests[0].uniformity->p_value);
        out += buf;
      }
      out += to_string(t.verdict);
    }
    out += "\n";
  }
  return out;
}

}  // namespace mtjrng::nist
