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
#include <cstdint>
#include <vector>

#include "mtjrng/bitstream.hpp"

namespace mtjrng {

struct WordHistogram {
  std::vector<std::uint64_t> counts;
  std::uint64_t words = 0;
  double chi_square = 0.0;
  double p_value = 0.0;  // chi-square against uniform, bins - 1 dof
};

inline constexpr std::size_t kDefaultHistogramBins = 256;

// 32-bit MSB-first words binned into equal intervals of [0, 2^32).
// Throws InputSizeError below 32 * bins bits, ValidationError if bins == 0.
WordHistogram word_histogram(const RawBitstream& stream, std::size_t bins = kDefaultHistogramBins);

struct BiasAutocorr {
  double mean = 0.0;
  std::vector<double> autocorr;  // autocorr[k - 1] is lag k
};

// Lag-k autocorrelation is the mean lagged product of centered bits divided
// by the biased variance. A constant stream has zero variance and reports 0.
// Throws InputSizeError when n_bits < 100 * max_lag.
BiasAutocorr bias_and_autocorr(const RawBitstream& stream, std::size_t max_lag);

struct ThroughputModel {
  double n_cells = 16;
  double cycle_hz = 1e5;
  double conditioning_factor = 1.0;  // 1 raw, 3 XOR-3, n/m Toeplitz

  void validate() const;
};

struct Throughput {
  double raw_bps = 0.0;
  double conditioned_bps = 0.0;
};

Throughput throughput(const ThroughputModel& model);

// Energy constants are modeling assumptions, not measurements. The defaults
// put XOR-3 output from 10^6 cells at 100 kHz close to 1 pJ/bit.
struct EnergyModel {
  double e_device = 3.0e-13;  // J per raw bit, per cell
  double e_shared = 3.3e-3;   // W of peripheral power shared by the array
  double csprng_low = 1.0e-8;
  double csprng_nominal = 1.0e-7;
  double csprng_high = 1.0e-6;

  void validate() const;
};

struct EnergyEstimate {
  double e_bit = 0.0;
  double ratio_low = 0.0;  // csprng_low / e_bit
  double ratio_nominal = 0.0;
  double ratio_high = 0.0;
};

EnergyEstimate energy_per_bit(const EnergyModel& model, double n_cells, double cycle_hz,
                              double conditioning_factor);

}  // namespace mtjrng
