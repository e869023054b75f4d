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

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "mtjrng/analysis.hpp"
#include "mtjrng/config.hpp"
#include "mtjrng/errors.hpp"
#include "mtjrng/mtj_array.hpp"
#include "mtjrng/nist/suite.hpp"
#include "mtjrng/nist/tests.hpp"

namespace mtjrng {
namespace {

DeviceParams ideal(double v50 = 0.40) {
  DeviceParams p;
  p.v50 = v50;
  return p;
}

// Mean and lag-1 autocorrelation computed locally.
struct Moments {
  double mean;
  double lag1;
};

Moments moments(const std::vector<int>& x) {
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    den += (x[i] - mean) * (x[i] - mean);
    if (i + 1 < x.size()) num += (x[i] - mean) * (x[i + 1] - mean);
  }
  return {mean, (num / (n - 1)) / (den / n)};
}

std::vector<int> sample(const DeviceParams& p, double v, int n, std::uint64_t seed) {
  auto engine = make_device_engine(seed, p.device_id, Substream::kGeneration);
  DeviceState state(p);
  std::vector<int> out(n);
  for (auto& b : out) b = sample_switch(state, p, v, engine);
  return out;
}

TEST(SwitchingProbability, Midpoint) { EXPECT_DOUBLE_EQ(switching_probability(0.40, ideal()), 0.5); }

TEST(SwitchingProbability, ThreeQuarterPoint) {
  const auto p = ideal();
  EXPECT_NEAR(switching_probability(p.v50 + p.slope_w * std::log(3.0), p), 0.75, 1e-12);
}

TEST(SwitchingProbability, BelowMidpointMatchesFormulaAndMonteCarlo) {
  const auto p = ideal();
  const double expect = 1.0 / (1.0 + std::exp(2.0));
  EXPECT_NEAR(switching_probability(0.36, p), expect, 1e-12);
  EXPECT_NEAR(expect, 0.1192, 1e-4);
  const auto bits = sample(p, 0.36, 1'000'000, 3);
  EXPECT_NEAR(moments(bits).mean, expect, 0.003);
}

TEST(SwitchingProbability, StrictlyIncreasing) {
  for (double w : {0.005, 0.02, 0.1}) {
    DeviceParams p = ideal();
    p.slope_w = w;
    double prev = -1.0;
    for (double v = 0.30; v <= 0.50; v += 0.001) {
      const double now = switching_probability(v, p);
      EXPECT_GT(now, prev);
      prev = now;
    }
  }
}

TEST(SampleSwitch, UnbiasedAtMidpoint) {
  const auto bits = sample(ideal(), 0.40, 1'000'000, 11);
  const double mean = moments(bits).mean;
  EXPECT_GE(mean, 0.4985);
  EXPECT_LE(mean, 0.5015);
}

TEST(SampleSwitch, StrongReadCorrelation) {
  DeviceParams p = ideal();
  p.corr_rho = 0.99;
  for (double v : {0.35, 0.40, 0.43}) {
    EXPECT_GE(moments(sample(p, v, 1'000'000, 5)).lag1, 0.97) << "v=" << v;
  }
}

TEST(SampleSwitch, SaturatedLowGivesZeros) {
  const auto p = ideal();
  const auto bits = sample(p, p.v50 - 40 * p.slope_w, 10'000, 1);
  EXPECT_EQ(std::accumulate(bits.begin(), bits.end(), 0), 0);
}

TEST(DeviceParams, Invariants) {
  DeviceParams p;
  EXPECT_NO_THROW(p.validate());
  p.slope_w = 0.0;
  EXPECT_THROW(p.validate(), ValidationError);
  p = {};
  p.corr_rho = 1.0;
  EXPECT_THROW(p.validate(), ValidationError);
  p = {};
  p.drift_sigma = -1e-3;
  EXPECT_THROW(p.validate(), ValidationError);
  p = {};
  p.r_ap = p.r_p;
  EXPECT_THROW(p.validate(), ValidationError);
}

TEST(CycleConfig, Invariants) {
  CycleConfig c;
  EXPECT_NO_THROW(c.validate());
  c.v_reset = 0.1;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.n_devices = 2;
  c.v_perturb = {0.4, -0.1};
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.cycle_hz = 0;
  EXPECT_THROW(c.validate(), ValidationError);
}

TEST(Calibrate, IdealDeviceLandsNearHalf) {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const auto p = ideal();
    const double v = calibrate(p, {}, seed);
    EXPECT_LE(std::abs(switching_probability(v, p) - 0.5), 0.02) << "seed " << seed;
  }
}

TEST(Calibrate, PreciseWithManyPulses) {
  CalibrationOptions o;
  o.pulses_per_estimate = 100'000;
  const double v = calibrate(ideal(0.40), o, 42);
  EXPECT_GE(v, 0.40 - 0.003);
  EXPECT_LE(v, 0.40 + 0.003);
}

TEST(Calibrate, UnreachableTargetNamesDevice) {
  DeviceParams p = ideal();
  p.device_id = 7;
  CalibrationOptions o;
  o.target_p = 0.0;
  try {
    calibrate(p, o, 1);
    FAIL() << "expected CalibrationError";
  } catch (const CalibrationError& e) {
    EXPECT_NE(std::string(e.what()).find("device 7"), std::string::npos) << e.what();
  }
}

TEST(Calibrate, VoltageCapTooLow) {
  CalibrationOptions o;
  o.v_max = 0.2;  // p(0.2) is ~5e-5 for v50 = 0.4
  EXPECT_THROW(calibrate(ideal(), o, 1), CalibrationError);
}

TEST(Calibrate, IgnoresDrift) {
  DeviceParams p = ideal();
  p.drift_sigma = 0.05;
  DeviceParams q = ideal();
  EXPECT_EQ(calibrate(p, {}, 9), calibrate(q, {}, 9));
}

ArrayState fixed_array(int n, double v50, double v, std::uint64_t seed) {
  ArrayState a;
  a.master_seed = seed;
  for (int i = 0; i < n; ++i) {
    DeviceParams p = ideal(v50);
    p.device_id = i;
    a.devices.push_back(p);
    a.v_perturb.push_back(v);
  }
  return a;
}

TEST(Generate, CycleArithmetic) {
  const auto a = fixed_array(16, 0.4, 0.4, 1);
  CycleConfig c;
  const auto s = generate(a, c, 160);
  EXPECT_EQ(s.size(), 160u);
  EXPECT_EQ(s.cycles, 10u);
  EXPECT_EQ(s.n_devices, 16);
  EXPECT_EQ(s.source, SourceTag::kMtjRaw);
  EXPECT_EQ(s.master_seed, 1u);

  const auto partial = generate(a, c, 161);
  EXPECT_EQ(partial.size(), 161u);
  EXPECT_EQ(partial.cycles, 11u);
}

TEST(Generate, SaturatedArrayIsAllZero) {
  const auto a = fixed_array(16, 1.5, 0.5, 3);  // 50 widths below v50
  CycleConfig c;
  const auto s = generate(a, c, 16 * 1000);
  for (auto byte : s.bytes()) ASSERT_EQ(byte, 0);
}

TEST(Generate, CycleMajorInterleave) {
  // Device d emits exactly what its own substream produces, at positions d, d + N, ...
  auto a = fixed_array(5, 0.4, 0.41, 77);
  a.devices[2].corr_rho = 0.3;
  CycleConfig c;
  c.n_devices = 5;
  const auto s = generate(a, c, 5 * 200);
  for (int d = 0; d < 5; ++d) {
    const auto expect = sample(a.devices[d], 0.41, 200, 77);
    for (int k = 0; k < 200; ++k) ASSERT_EQ(s.get(5 * k + d), expect[k] != 0) << d << "," << k;
  }
}

TEST(Generate, ParallelMatchesSerial) {
  ArrayConfig cfg = default_array_config();
  cfg.cycle.n_devices = 13;
  const ArrayState a = build_array(cfg);
  for (std::uint64_t n : {1ull, 13ull, 100ull, 13ull * 8 * 7 + 5, 200'003ull}) {
    EXPECT_EQ(generate(a, cfg.cycle, n), generate_serial(a, cfg.cycle, n)) << n;
  }
}

TEST(Generate, DeterministicFromSeed) {
  const ArrayConfig cfg = default_array_config();
  const auto a = build_array(cfg);
  const auto b = build_array(cfg);
  EXPECT_EQ(a.v_perturb, b.v_perturb);
  EXPECT_EQ(generate(a, cfg.cycle, 50'000), generate(b, cfg.cycle, 50'000));
  ArrayConfig other = cfg;
  other.master_seed += 1;
  EXPECT_NE(generate(build_array(other), other.cycle, 50'000), generate(a, cfg.cycle, 50'000));
}

TEST(Generate, RequiresVoltages) {
  ArrayState a = fixed_array(4, 0.4, 0.4, 1);
  a.v_perturb.clear();
  CycleConfig c;
  c.n_devices = 4;
  EXPECT_THROW(generate(a, c, 10), ValidationError);
}

TEST(Generate, CalibrationFixedPoint) {
  ArrayConfig cfg = default_array_config();
  cfg.device_defaults.drift_sigma = 0.0;
  cfg.device_defaults.drift_reversion = 0.0;
  cfg.device_defaults.corr_rho = 0.0;
  cfg.calibration.pulses_per_estimate = 100'000;
  const auto a = build_array(cfg);
  const auto s = generate(a, cfg.cycle, 1'000'000);
  const auto bits = s.unpack();
  const double mean = std::accumulate(bits.begin(), bits.end(), 0.0) / static_cast<double>(bits.size());
  EXPECT_NEAR(mean, 0.5, 0.005);
}

TEST(Generate, DriftFreeStreamPassesFrequencyAndRuns) {
  ArrayConfig cfg = default_array_config();
  cfg.device_defaults.drift_sigma = 0.0;
  cfg.device_defaults.drift_reversion = 0.0;
  cfg.device_defaults.corr_rho = 0.0;
  cfg.cycle.v_perturb.clear();
  // Exact midpoints: the calibrated voltages would leave a few 1e-3 of bias.
  const auto devices = expand_devices(cfg);
  for (const auto& d : devices) cfg.cycle.v_perturb.push_back(d.v50);
  const auto a = build_array(cfg);
  constexpr std::size_t kSeq = 20, kLen = 100'000;
  const auto bits = generate(a, cfg.cycle, kSeq * kLen).unpack();
  std::size_t freq_pass = 0, runs_pass = 0;
  for (std::size_t i = 0; i < kSeq; ++i) {
    const nist::BitSpan seq(bits.data() + i * kLen, kLen);
    freq_pass += (*nist::frequency(seq))[0] >= 0.01;
    runs_pass += (*nist::runs(seq))[0] >= 0.01;
  }
  const double threshold = nist::proportion_threshold(kSeq, 0.01);
  EXPECT_GE(freq_pass / double(kSeq), threshold);
  EXPECT_GE(runs_pass / double(kSeq), threshold);
}

TEST(Generate, DefaultDriftFailsFrequency) {
  const ArrayConfig cfg = default_array_config();
  const auto a = build_array(cfg);
  constexpr std::size_t kSeq = 10, kLen = 1'000'000;
  const auto bits = generate(a, cfg.cycle, kSeq * kLen).unpack();
  std::size_t pass = 0;
  for (std::size_t i = 0; i < kSeq; ++i) {
    pass += (*nist::frequency(nist::BitSpan(bits.data() + i * kLen, kLen)))[0] >= 0.01;
  }
  EXPECT_LT(pass / double(kSeq), nist::proportion_threshold(kSeq, 0.01));
}

TEST(Generate, DefaultDriftHistogramNonUniform) {
  const ArrayConfig cfg = default_array_config();
  const auto s = generate(build_array(cfg), cfg.cycle, 10'000'000);
  EXPECT_LT(word_histogram(s, 256).p_value, 0.01);
}

}  // namespace
}  // namespace mtjrng
