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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mtjrng::nist {

// Rows follow the order of the usual summary table.
enum class TestId {
  kFrequency,
  kBlockFrequency,
  kRuns,
  kLongestRun,
  kRank,
  kFft,
  kNonOverlappingTemplate,
  kOverlappingTemplate,
  kUniversal,
  kLinearComplexity,
  kSerial,
  kApproximateEntropy,
  kCumulativeSums,
  kRandomExcursions,
  kRandomExcursionsVariant,
};

inline constexpr std::array<TestId, 15> kAllTests = {
    TestId::kFrequency,          TestId::kBlockFrequency,         TestId::kRuns,
    TestId::kLongestRun,         TestId::kRank,                   TestId::kFft,
    TestId::kNonOverlappingTemplate, TestId::kOverlappingTemplate, TestId::kUniversal,
    TestId::kLinearComplexity,   TestId::kSerial,                 TestId::kApproximateEntropy,
    TestId::kCumulativeSums,     TestId::kRandomExcursions,       TestId::kRandomExcursionsVariant,
};

std::string_view test_key(TestId id);          // "frequency", "block_frequency", ...
std::string_view test_display_name(TestId id);  // "Frequency", "Block frequency", ...
// Throws ValidationError for an unknown key.
TestId test_from_key(std::string_view key);

struct SuiteConfig {
  std::uint64_t sequence_length = 1'000'000;
  std::size_t n_sequences = 55;
  double alpha = 0.01;
  std::size_t block_frequency_m = 128;
  std::size_t non_overlapping_m = 9;
  std::size_t overlapping_m = 9;
  std::size_t overlapping_block = 1032;
  std::size_t universal_l = 7;
  std::size_t universal_q = 1280;
  std::size_t linear_complexity_m = 500;
  std::size_t serial_m = 16;
  std::size_t approximate_entropy_m = 10;

  // Throws ConfigError.
  void validate() const;
};

// One sequence as one byte per bit (0 or 1).
using BitSpan = std::span<const std::uint8_t>;

// p-values of one test on one sequence, or nullopt when the test is not
// applicable (sequence too short, too few random-walk cycles, ...).
using TestOutcome = std::optional<std::vector<double>>;

TestOutcome frequency(BitSpan bits);
TestOutcome block_frequency(BitSpan bits, std::size_t block);
TestOutcome runs(BitSpan bits);
TestOutcome longest_run(BitSpan bits);
TestOutcome rank(BitSpan bits);
TestOutcome spectral(BitSpan bits);
TestOutcome non_overlapping_template(BitSpan bits, std::size_t m);
TestOutcome overlapping_template(BitSpan bits, std::size_t m, std::size_t block);
TestOutcome universal(BitSpan bits, std::size_t l, std::size_t q);
TestOutcome linear_complexity(BitSpan bits, std::size_t block);
TestOutcome serial(BitSpan bits, std::size_t m);
TestOutcome approximate_entropy(BitSpan bits, std::size_t m);
TestOutcome cumulative_sums(BitSpan bits);  // {forward, backward}
TestOutcome random_excursions(BitSpan bits);          // states -4..-1, 1..4
TestOutcome random_excursions_variant(BitSpan bits);  // states -9..-1, 1..9

TestOutcome run_single_test(TestId id, BitSpan bits, const SuiteConfig& cfg);

// Sub-test labels in p-value order.
std::vector<std::string> subtest_labels(TestId id, const SuiteConfig& cfg);

// Length of the shortest LFSR generating the sequence over GF(2).
std::size_t berlekamp_massey(BitSpan bits);

// Rank over GF(2); each row packs up to 64 columns.
int matrix_rank_gf2(std::span<const std::uint64_t> rows);

// Probability that a random rows x cols binary matrix has rank r.
double gf2_rank_probability(int r, int rows, int cols);

// Aperiodic templates of length m, ascending. m = 9 comes from the embedded
// 148-entry table; other lengths are enumerated.
const std::vector<std::uint32_t>& aperiodic_templates(std::size_t m);

// Probabilities of 0..k-1 and >= k overlapping all-ones matches of length m
// in a block of `block` uniform bits (exact dynamic program).
std::vector<double> overlapping_match_probabilities(std::size_t m, std::size_t block, std::size_t k);

}  // namespace mtjrng::nist
