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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include <gtest/gtest.h>

#include "mtjrng/errors.hpp"
#include "mtjrng/nist/report.hpp"
#include "mtjrng/nist/special.hpp"
#include "mtjrng/nist/suite.hpp"
#include "mtjrng/prng.hpp"
#include "test_util.hpp"

namespace mtjrng::nist {
namespace {

TEST(Uniformity, EvenlySpread) {
  std::vector<double> p;
  for (int i = 0; i < 100; ++i) p.push_back((i % 10) / 10.0 + 0.05);
  const auto u = uniformity_of_pvalues(p);
  ASSERT_TRUE(u);
  EXPECT_DOUBLE_EQ(u->p_value, 1.0);
  EXPECT_FALSE(u->low_sample);
}

TEST(Uniformity, AllInFirstBin) {
  const std::vector<double> p(55, 0.001);
  // chi2 = (55 - 5.5)^2 / 5.5 + 9 * 5.5 = 495
  const auto u = uniformity_of_pvalues(p);
  ASSERT_TRUE(u);
  EXPECT_LT(u->p_value, 1e-90);
  EXPECT_NEAR(igamc(4.5, 495.0 / 2), u->p_value, 1e-12 * igamc(4.5, 495.0 / 2) + 1e-300);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.2f", u->p_value);
  EXPECT_STREQ(buf, "0.00");
}

TEST(Uniformity, UnderflowReportedAsZero) {
  const std::vector<double> p(100'000, 0.999);
  EXPECT_EQ(uniformity_of_pvalues(p)->p_value, 0.0);
}

TEST(Uniformity, EdgeValuesLandInEndBins) {
  // p = 1.0 belongs in the last bin, not an eleventh.
  std::vector<double> p;
  for (int i = 0; i < 10; ++i) p.push_back(i == 9 ? 1.0 : i / 10.0);
  EXPECT_DOUBLE_EQ(uniformity_of_pvalues(p)->p_value, 1.0);
}

TEST(Uniformity, UniformInputsRarelyFlagged) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int ok = 0;
  constexpr int kTrials = 10'000;
  for (int t = 0; t < kTrials; ++t) {
    std::vector<double> p(55);
    for (auto& v : p) v = u(rng);
    ok += uniformity_of_pvalues(p)->p_value >= kUniformityCutoff;
  }
  EXPECT_GE(ok, static_cast<int>(0.999 * kTrials));
}

TEST(Uniformity, SmallSampleFlag) {
  EXPECT_TRUE(uniformity_of_pvalues(std::vector<double>(20, 0.5))->low_sample);
  EXPECT_FALSE(uniformity_of_pvalues(std::vector<double>{}).has_value());
}

TEST(Proportion, Thresholds) {
  EXPECT_NEAR(proportion_threshold(55, 0.01), 0.99 - 3 * std::sqrt(0.99 * 0.01 / 55), 1e-15);
  EXPECT_NEAR(proportion_threshold(55, 0.01), 0.9497, 1e-4);
  EXPECT_NEAR(proportion_threshold(1000, 0.01), 0.9806, 1e-4);
  EXPECT_DOUBLE_EQ(proportion_threshold(10, 0.0), 1.0);
  EXPECT_THROW(proportion_threshold(0, 0.01), ValidationError);
}

SuiteConfig tiny_config(std::size_t n) {
  SuiteConfig c;
  c.n_sequences = n;
  return c;
}

// Fabricated per-sequence outcomes with only the frequency slot filled in.
SequenceResults fake(const std::vector<std::optional<double>>& freq) {
  SequenceResults r;
  for (const auto& p : freq) {
    std::vector<TestOutcome> row(kAllTests.size());
    if (p) row[0] = std::vector<double>{*p};
    r.push_back(std::move(row));
  }
  return r;
}

std::vector<std::optional<double>> spread(std::size_t n, double fail_at = -1, std::size_t fails = 0) {
  std::vector<std::optional<double>> p;
  for (std::size_t i = 0; i < n; ++i) p.emplace_back(i < fails ? fail_at : (i % 10) / 10.0 + 0.05);
  return p;
}

TEST(Aggregate, PassWhenProportionAndUniformityHold) {
  const auto rep = aggregate(fake(spread(55)), tiny_config(55), "x");
  const auto& f = rep.at(TestId::kFrequency);
  EXPECT_EQ(f.verdict, Verdict::kPass);
  EXPECT_EQ(f.subtests[0].passes, 55u);
  EXPECT_DOUBLE_EQ(f.subtests[0].proportion, 1.0);
  EXPECT_EQ(rep.at(TestId::kRuns).verdict, Verdict::kNotApplicable);
  EXPECT_EQ(rep.count(Verdict::kPass), 1u);
  EXPECT_FALSE(rep.all_passed());
}

TEST(Aggregate, ProportionBoundary) {
  // 55 sequences: threshold 0.9497, so 52/55 = 0.945 fails and 53/55 = 0.964 passes.
  auto two = spread(55, 0.001, 2);
  auto three = spread(55, 0.001, 3);
  EXPECT_EQ(aggregate(fake(two), tiny_config(55), "x").at(TestId::kFrequency).verdict, Verdict::kPass);
  EXPECT_EQ(aggregate(fake(three), tiny_config(55), "x").at(TestId::kFrequency).verdict, Verdict::kFail);
}

TEST(Aggregate, AlphaIsInclusive) {
  std::vector<std::optional<double>> p(55, 0.01);
  const auto rep = aggregate(fake(p), tiny_config(55), "x");
  EXPECT_EQ(rep.at(TestId::kFrequency).subtests[0].passes, 55u);
  // Every p-value in one bin: proportion fine, uniformity not.
  EXPECT_EQ(rep.at(TestId::kFrequency).verdict, Verdict::kFail);
}

TEST(Aggregate, NotApplicableSequencesExcluded) {
  auto p = spread(60);
  for (std::size_t i = 0; i < 5; ++i) p[i * 12] = std::nullopt;
  const auto rep = aggregate(fake(p), tiny_config(60), "x");
  const auto& s = rep.at(TestId::kFrequency).subtests[0];
  EXPECT_EQ(s.applicable, 55u);
  EXPECT_EQ(s.p_values.size(), 60u);
  EXPECT_DOUBLE_EQ(s.threshold, proportion_threshold(55, 0.01));
}

TEST(Aggregate, RowFailsIfAnySubtestFails) {
  const SuiteConfig cfg = tiny_config(55);
  SequenceResults r;
  for (std::size_t i = 0; i < 55; ++i) {
    std::vector<TestOutcome> row(kAllTests.size());
    const double good = (i % 10) / 10.0 + 0.05;
    row[static_cast<std::size_t>(TestId::kCumulativeSums)] = std::vector<double>{good, i < 5 ? 0.0 : good};
    r.push_back(std::move(row));
  }
  const auto& t = aggregate(r, cfg, "x").at(TestId::kCumulativeSums);
  EXPECT_EQ(t.subtests[0].verdict, Verdict::kPass);
  EXPECT_EQ(t.subtests[1].verdict, Verdict::kFail);
  EXPECT_EQ(t.verdict, Verdict::kFail);
}

RawBitstream reference_stream(std::uint64_t bits) {
  return xoroshiro128p_stream(41, bits);
}

TEST(RunSuite, ParallelMatchesSerial) {
  SuiteConfig cfg;
  cfg.n_sequences = 4;
  cfg.sequence_length = 400'000;
  const auto s = reference_stream(cfg.n_sequences * cfg.sequence_length);
  const auto a = run_suite(s, cfg);
  const auto b = run_suite_serial(s, cfg);
  EXPECT_EQ(to_json(a), to_json(b));
  EXPECT_EQ(a.source, "xoroshiro128p");
  ASSERT_EQ(a.tests.size(), 15u);
  EXPECT_EQ(a.at(TestId::kUniversal).verdict, Verdict::kPass);  // 400000 >= 387840
}

TEST(RunSuite, SequencesAreDisjointSlices) {
  SuiteConfig cfg;
  cfg.n_sequences = 3;
  cfg.sequence_length = 100'000;
  const auto s = reference_stream(300'000);
  const auto rep = run_suite(s, cfg);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto bits = s.unpack(i * 100'000, 100'000);
    const double p = frequency(bits)->front();
    EXPECT_DOUBLE_EQ(*rep.at(TestId::kFrequency).subtests[0].p_values[i], p);
  }
}

TEST(RunSuite, InsufficientBits) {
  SuiteConfig cfg;
  cfg.n_sequences = 2;
  cfg.sequence_length = 100'000;
  const auto s = reference_stream(199'999);
  EXPECT_THROW(run_suite(s, cfg), InputSizeError);
  EXPECT_THROW(run_suite_serial(s, cfg), InputSizeError);
}

TEST(Report, JsonShape) {
  const auto rep = aggregate(fake(spread(55)), tiny_config(55), "raw");
  const auto j = to_json(rep);
  EXPECT_EQ(j["source"], "raw");
  EXPECT_EQ(j["config"]["n_sequences"], 55);
  ASSERT_EQ(j["tests"].size(), 15u);
  EXPECT_EQ(j["tests"][0]["test"], "frequency");
  EXPECT_EQ(j["tests"][0]["verdict"], "PASS");
  EXPECT_EQ(j["tests"][0]["subtests"][0]["p_values"].size(), 55u);
  EXPECT_EQ(j["tests"][1]["verdict"], "N/A");
  EXPECT_TRUE(j["tests"][1]["subtests"][0]["uniformity"].is_null());
  EXPECT_EQ(j["tests"][6]["subtests"].size(), 148u);
}

TEST(Report, CsvShape) {
  const std::vector<SuiteReport> reps = {aggregate(fake(spread(55)), tiny_config(55), "raw"),
                                         aggregate(fake(spread(55, 0.0, 10)), tiny_config(55), "xor3")};
  const auto csv = to_csv(reps);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "test,raw,xor3");
  EXPECT_NE(csv.find("\nFrequency,1.00/PASS,"), std::string::npos);
  EXPECT_NE(csv.find("/FAIL\n"), std::string::npos);
  EXPECT_NE(csv.find("\nRuns,N/A,N/A\n"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 16);
}

TEST(Report, ConfigJson) {
  SuiteConfig c;
  c.n_sequences = 20;
  c.alpha = 0.05;
  const auto back = suite_config_from_json(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
  EXPECT_THROW(suite_config_from_json({{"n_sequence", 3}}), ConfigError);
  EXPECT_THROW(suite_config_from_json({{"alpha", "x"}}), ConfigError);
  EXPECT_THROW(suite_config_from_json({{"alpha", 2.0}}), ConfigError);
  EXPECT_THROW(suite_config_from_json(nlohmann::json::array()), ConfigError);
  EXPECT_EQ(suite_config_from_json({{"serial_m", 8}}).serial_m, 8u);
}

}  // namespace
}  // namespace mtjrng::nist
