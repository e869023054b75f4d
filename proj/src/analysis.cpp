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

#include "mtjrng/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mtjrng/errors.hpp"
#include "mtjrng/latent.hpp"
#include "mtjrng/nist/special.hpp"

namespace mtjrng {

WordHistogram word_histogram(const RawBitstream& stream, std::size_t bins) {
  if (bins == 0) throw ValidationError("histogram needs at least one bin");
  if (stream.size() < 32 * static_cast<std::uint64_t>(bins)) {
    throw InputSizeError("histogram with " + std::to_string(bins) + " bins needs " + std::to_string(32 * bins) +
                         " bits, stream has " + std::to_string(stream.size()));
  }
  WordHistogram h;
  h.counts.assign(bins, 0);
  for (std::uint32_t w : words_from_bits(stream)) {
    ++h.counts[static_cast<std::size_t>((static_cast<std::uint64_t>(w) * bins) >> 32)];
  }
  h.words = stream.size() / 32;
  const double expected = static_cast<double>(h.words) / static_cast<double>(bins);
  for (std::uint64_t c : h.counts) {
    const double d = static_cast<double>(c) - expected;
    h.chi_square += d * d / expected;
  }
  h.p_value = bins > 1 ? nist::igamc(0.5 * static_cast<double>(bins - 1), 0.5 * h.chi_square) : 1.0;
  return h;
}

BiasAutocorr bias_and_autocorr(const RawBitstream& stream, std::size_t max_lag) {
  const std::uint64_t n = stream.size();
  if (n == 0 || n < 100 * static_cast<std::uint64_t>(max_lag)) {
    throw InputSizeError("autocorrelation up to lag " + std::to_string(max_lag) + " needs at least " +
                         std::to_string(std::max<std::uint64_t>(1, 100 * max_lag)) + " bits");
  }
  const auto bits = stream.unpack(0, n);
  BiasAutocorr out;
  std::uint64_t ones = 0;
  for (auto b : bits) ones += b;
  out.mean = static_cast<double>(ones) / static_cast<double>(n);
  const double var = out.mean * (1.0 - out.mean);
  out.autocorr.assign(max_lag, 0.0);
  if (var == 0.0) return out;
  std::vector<double> centered(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) centered[i] = bits[i] - out.mean;
#pragma omp parallel for schedule(static)
  for (long k = 1; k <= static_cast<long>(max_lag); ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i + static_cast<std::size_t>(k) < centered.size(); ++i) {
      sum += centered[i] * centered[i + static_cast<std::size_t>(k)];
    }
    out.autocorr[static_cast<std::size_t>(k - 1)] = sum / static_cast<double>(n - static_cast<std::uint64_t>(k)) / var;
  }
  return out;
}

void ThroughputModel::validate() const {
  if (!(n_cells > 0) || !(cycle_hz > 0) || !(conditioning_factor > 0)) {
    throw ValidationError("throughput model fields must be positive");
  }
}

Throughput throughput(const ThroughputModel& model) {
  model.validate();
  Throughput t;
  t.raw_bps = model.n_cells * model.cycle_hz;
  t.conditioned_bps = t.raw_bps / model.conditioning_factor;
  return t;
}

void EnergyModel::validate() const {
  if (!(e_device >= 0) || !(e_shared >= 0)) throw ValidationError("energy constants must be nonnegative");
  if (!(csprng_low > 0) || !(csprng_low <= csprng_nominal) || !(csprng_nominal <= csprng_high)) {
    throw ValidationError("CSPRNG cost range must satisfy 0 < low <= nominal <= high");
  }
}

EnergyEstimate energy_per_bit(const EnergyModel& model, double n_cells, double cycle_hz,
                              double conditioning_factor) {
  model.validate();
  ThroughputModel{n_cells, cycle_hz, conditioning_factor}.validate();
  EnergyEstimate e;
  e.e_bit = conditioning_factor * (model.e_device + model.e_shared / (n_cells * cycle_hz));
  if (e.e_bit > 0) {
    e.ratio_low = model.csprng_low / e.e_bit;
    e.ratio_nominal = model.csprng_nominal / e.e_bit;
    e.ratio_high = model.csprng_high / e.e_bit;
  } else {
    e.ratio_low = e.ratio_nominal = e.ratio_high = INFINITY;
  }
  return e;
}

}  // namespace mtjrng
