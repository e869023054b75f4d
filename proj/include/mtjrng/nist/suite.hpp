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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtjrng/bitstream.hpp"
#include "mtjrng/nist/tests.hpp"

namespace mtjrng::nist {

// Minimum passing proportion: (1 - alpha) - 3 sqrt((1 - alpha) alpha / n).
double proportion_threshold(std::size_t n_sequences, double alpha);

// Below this many p-values the uniformity check carries a warning.
inline constexpr std::size_t kRecommendedUniformitySample = 55;
inline constexpr double kUniformityCutoff = 1e-4;

struct Uniformity {
  double p_value = 0.0;  // P_T, 0.0 once it underflows
  bool low_sample = false;
};

// Chi-square over 10 equal bins of [0, 1]; nullopt for an empty list.
std::optional<Uniformity> uniformity_of_pvalues(std::span<const double> p_values);

enum class Verdict { kPass, kFail, kNotApplicable };
std::string_view to_string(Verdict v);

struct SubtestResult {
  std::string label;
  std::vector<std::optional<double>> p_values;  // one per sequence; nullopt = not applicable
  std::size_t applicable = 0;
  std::size_t passes = 0;
  double proportion = 0.0;
  double threshold = 0.0;
  std::optional<Uniformity> uniformity;
  Verdict verdict = Verdict::kNotApplicable;
};

struct TestReport {
  TestId id{};
  std::vector<SubtestResult> subtests;
  Verdict verdict = Verdict::kNotApplicable;  // PASS iff every sub-test passes
};

struct SuiteReport {
  std::string source;
  SuiteConfig config;
  std::vector<TestReport> tests;  // kAllTests order

  const TestReport& at(TestId id) const;
  bool all_passed() const;
  std::size_t count(Verdict v) const;
};

// Per-sequence raw results, indexed [sequence][test].
using SequenceResults = std::vector<std::vector<TestOutcome>>;

// All 15 tests on one sequence, kAllTests order.
std::vector<TestOutcome> evaluate_sequence(BitSpan bits, const SuiteConfig& cfg);

// Folds per-sequence results into proportions, uniformity and verdicts.
SuiteReport aggregate(const SequenceResults& results, const SuiteConfig& cfg, std::string source);

// Splits the first n_sequences * sequence_length bits into disjoint
// sequences and runs every test. Sequence-parallel; the report does not
// depend on scheduling. Throws InputSizeError on a short stream.
SuiteReport run_suite(const RawBitstream& stream, const SuiteConfig& cfg);

// Sequential reference for tests and benchmarks.
SuiteReport run_suite_serial(const RawBitstream& stream, const SuiteConfig& cfg);

}  // namespace mtjrng::nist
