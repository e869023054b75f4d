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

#include "mtjrng/nist/suite.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <exception>

#include "mtjrng/errors.hpp"
#include "mtjrng/nist/special.hpp"

namespace mtjrng::nist {
namespace {

void check_size(const RawBitstream& stream, const SuiteConfig& cfg) {
  cfg.validate();
  const std::uint64_t need = cfg.sequence_length * cfg.n_sequences;
  if (stream.size() < need) {
    throw InputSizeError("NIST suite needs " + std::to_string(need) + " bits (" +
                         std::to_string(cfg.n_sequences) + " x " + std::to_string(cfg.sequence_length) +
                         "), stream has " + std::to_string(stream.size()));
  }
}

}  // namespace

double proportion_threshold(std::size_t n_sequences, double alpha) {
  if (n_sequences == 0) throw ValidationError("proportion threshold needs at least one sequence");
  const double p_hat = 1.0 - alpha;
  return p_hat - 3.0 * std::sqrt(p_hat * alpha / static_cast<double>(n_sequences));
}

std::optional<Uniformity> uniformity_of_pvalues(std::span<const double> p_values) {
  if (p_values.empty()) return std::nullopt;
  std::array<double, 10> bins{};
  for (double p : p_values) bins[static_cast<std::size_t>(std::clamp(static_cast<int>(p * 10.0), 0, 9))] += 1.0;
  const double expected = static_cast<double>(p_values.size()) / 10.0;
  double chi2 = 0.0;
  for (double f : bins) chi2 += (f - expected) * (f - expected) / expected;
  double pt = igamc(4.5, chi2 / 2.0);
  if (pt < DBL_MIN) pt = 0.0;
  return Uniformity{pt, p_values.size() < kRecommendedUniformitySample};
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "PASS";
    case Verdict::kFail: return "FAIL";
    case Verdict::kNotApplicable: return "N/A";
  }
  return "?";
}

const TestReport& SuiteReport::at(TestId id) const {
  for (const auto& t : tests) {
    if (t.id == id) return t;
  }
  throw ValidationError("test missing from report");
}

bool SuiteReport::all_passed() const {
  return std::all_of(tests.begin(), tests.end(), [](const TestReport& t) { return t.verdict == Verdict::kPass; });
}

std::size_t SuiteReport::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(tests.begin(), tests.end(), [v](const TestReport& t) { return t.verdict == v; }));
}

std::vector<TestOutcome> evaluate_sequence(BitSpan bits, const SuiteConfig& cfg) {
  std::vector<TestOutcome> out;
  out.reserve(kAllTests.size());
  for (TestId id : kAllTests) out.push_back(run_single_test(id, bits, cfg));
  return out;
}

SuiteReport aggregate(const SequenceResults& results, const SuiteConfig& cfg, std::string source) {
  SuiteReport report;
  report.source = std::move(source);
  report.config = cfg;
  for (std::size_t t = 0; t < kAllTests.size(); ++t) {
    TestReport tr;
    tr.id = kAllTests[t];
    const auto labels = subtest_labels(tr.id, cfg);
    for (std::size_t s = 0; s < labels.size(); ++s) {
      SubtestResult sub;
      sub.label = labels[s];
      std::vector<double> applicable;
      for (const auto& seq : results) {
        const auto& outcome = seq[t];
        if (outcome && s < outcome->size()) {
          const double p = (*outcome)[s];
          sub.p_values.emplace_back(p);
          applicable.push_back(p);
          sub.passes += p >= cfg.alpha;
        } else {
          sub.p_values.emplace_back(std::nullopt);
        }
      }
      sub.applicable = applicable.size();
      if (sub.applicable > 0) {
        sub.proportion = static_cast<double>(sub.passes) / static_cast<double>(sub.applicable);
        sub.threshold = proportion_threshold(sub.applicable, cfg.alpha);
        sub.uniformity = uniformity_of_pvalues(applicable);
        const bool ok = sub.proportion >= sub.threshold && sub.uniformity->p_value >= kUniformityCutoff;
        sub.verdict = ok ? Verdict::kPass : Verdict::kFail;
      }
      tr.subtests.push_back(std::move(sub));
    }
    const bool any_fail = std::any_of(tr.subtests.begin(), tr.subtests.end(),
                                      [](const SubtestResult& s) { return s.verdict == Verdict::kFail; });
    const bool all_na = std::all_of(tr.subtests.begin(), tr.subtests.end(),
                                    [](const SubtestResult& s) { return s.verdict == Verdict::kNotApplicable; });
    tr.verdict = any_fail ? Verdict::kFail : (all_na ? Verdict::kNotApplicable : Verdict::kPass);
    report.tests.push_back(std::move(tr));
  }
  return report;
}

SuiteReport run_suite(const RawBitstream& stream, const SuiteConfig& cfg) {
  check_size(stream, cfg);
  SequenceResults results(cfg.n_sequences);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long s = 0; s < static_cast<long>(cfg.n_sequences); ++s) {
    try {
      const auto bits = stream.unpack(static_cast<std::uint64_t>(s) * cfg.sequence_length, cfg.sequence_length);
      results[static_cast<std::size_t>(s)] = evaluate_sequence(bits, cfg);
    } catch (...) {
#pragma omp critical(mtjrng_suite)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return aggregate(results, cfg, std::string(to_string(stream.source)));
}

SuiteReport run_suite_serial(const RawBitstream& stream, const SuiteConfig& cfg) {
  check_size(stream, cfg);
  SequenceResults results;
  for (std::size_t s = 0; s < cfg.n_sequences; ++s) {
    const auto bits = stream.unpack(s * cfg.sequence_length, cfg.sequence_length);
    results.push_back(evaluate_sequence(bits, cfg));
  }
  return aggregate(results, cfg, std::string(to_string(stream.source)));
}

}  // namespace mtjrng::nist
