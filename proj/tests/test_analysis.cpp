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
#include "mtjrng/prng.hpp"
#include "test_util.hpp"

namespace mtjrng {
namespace {

TEST(Histogram, AllZerosInFirstBin) {
  const auto h = word_histogram(RawBitstream(32 * 1000));
  EXPECT_EQ(h.words, 1000u);
  EXPECT_EQ(h.counts[0], 1000u);
  EXPECT_EQ(std::accumulate(h.counts.begin() + 1, h.counts.end(), std::uint64_t{0}), 0u);
  EXPECT_LT(h.p_value, 1e-100);
}

TEST(Histogram, BinEdges) {
  // 0x00FFFFFF is the top of bin 0 for 256 bins; 0x01000000 starts bin 1.
  auto s = RawBitstream::from_string("00000000111111111111111111111111"
                                     "00000001000000000000000000000000"
                                     "11111111111111111111111111111111"
                                     "1111");
  const auto h = word_histogram(s, 1);
  EXPECT_EQ(h.counts[0], 3u);
  EXPECT_EQ(h.p_value, 1.0);
  EXPECT_THROW(word_histogram(s, 4), InputSizeError);
  const std::string words = "00000000111111111111111111111111"
                            "00000001000000000000000000000000"
                            "11111111111111111111111111111111";
  auto t = RawBitstream::from_string(words + std::string(32 * 253, '0'));
  const auto g = word_histogram(t, 256);
  EXPECT_EQ(g.counts[0], 254u);
  EXPECT_EQ(g.counts[1], 1u);
  EXPECT_EQ(g.counts[255], 1u);
  EXPECT_THROW(word_histogram(t, 0), ValidationError);
}

TEST(Histogram, ChiSquareByHand) {
  // Four words, two bins: three low, one high. chi2 = (1 + 1) / 2 = 1.
  const auto s = RawBitstream::from_string(std::string(96, '0') + "1" + std::string(31, '0'));
  const auto h = word_histogram(s, 2);
  EXPECT_DOUBLE_EQ(h.chi_square, 1.0);
  EXPECT_NEAR(h.p_value, std::erfc(std::sqrt(0.5)), 1e-12);  // chi-square with 1 dof
}

TEST(Histogram, UniformReferencePasses) {
  const auto s = xoroshiro128p_stream(3, 10'000'000);
  const auto h = word_histogram(s);
  EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), std::uint64_t{0}), h.words);
  EXPECT_EQ(h.words, 312'500u);
  EXPECT_GE(h.p_value, 0.01);
}

TEST(Autocorr, Alternating) {
  std::string alt;
  for (int i = 0; i < 1000; ++i) alt += (i % 2) ? '1' : '0';
  const auto r = bias_and_autocorr(RawBitstream::from_string(alt), 2);
  EXPECT_DOUBLE_EQ(r.mean, 0.5);
  EXPECT_NEAR(r.autocorr[0], -1.0, 1e-12);
  EXPECT_NEAR(r.autocorr[1], 1.0, 1e-12);
}

TEST(Autocorr, ConstantStreamHasZeroCorrelation) {
  const auto r = bias_and_autocorr(RawBitstream::from_string(std::string(500, '1')), 3);
  EXPECT_EQ(r.mean, 1.0);
  EXPECT_EQ(r.autocorr, std::vector<double>(3, 0.0));
}

TEST(Autocorr, MinimumLength) {
  EXPECT_THROW(bias_and_autocorr(RawBitstream(999), 10), InputSizeError);
  EXPECT_NO_THROW(bias_and_autocorr(RawBitstream(1000), 10));
  EXPECT_THROW(bias_and_autocorr(RawBitstream(0), 0), InputSizeError);
}

TEST(Autocorr, MatchesDirectComputation) {
  const auto bits = testing::bernoulli_bits(5000, 0.3, 21);
  const auto r = bias_and_autocorr(RawBitstream::from_bits(bits), 5);
  const double n = 5000;
  const double mean = std::accumulate(bits.begin(), bits.end(), 0.0) / n;
  for (int k = 1; k <= 5; ++k) {
    double s = 0;
    for (int i = 0; i + k < 5000; ++i) s += (bits[i] - mean) * (bits[i + k] - mean);
    EXPECT_NEAR(r.autocorr[k - 1], s / (n - k) / (mean * (1 - mean)), 1e-12);
  }
}

TEST(Autocorr, RepeatModel) {
  // Single device so that neighbouring bits come from the same cell.
  ArrayState a;
  a.master_seed = 17;
  DeviceParams p;
  p.corr_rho = 0.5;
  a.devices.push_back(p);
  a.v_perturb.push_back(p.v50);
  CycleConfig c;
  c.n_devices = 1;
  const auto r = bias_and_autocorr(generate(a, c, 1'000'000), 4);
  EXPECT_GE(r.autocorr[0], 0.47);
  EXPECT_LE(r.autocorr[0], 0.53);
  EXPECT_NEAR(r.autocorr[1], 0.25, 0.03);  // rho^k
}

TEST(Autocorr, UniformReference) {
  const auto r = bias_and_autocorr(xoroshiro128p_stream(5, 10'000'000), 1);
  EXPECT_LE(std::abs(r.autocorr[0]), 0.001);
  EXPECT_NEAR(r.mean, 0.5, 3 * 0.5 / std::sqrt(1e7));
}

TEST(Throughput, Examples) {
  auto t = throughput({16, 1e5, 1});
  EXPECT_EQ(t.raw_bps, 1.6e6);
  EXPECT_EQ(t.conditioned_bps, t.raw_bps);
  t = throughput({1e6, 1e5, 3});
  EXPECT_EQ(t.raw_bps, 1e11);
  EXPECT_NEAR(t.conditioned_bps, 3.33e10, 0.01e10);
  EXPECT_GE(t.conditioned_bps, 1e9);
  t = throughput({1e6, 1e5, 8192.0 / 4096});
  EXPECT_EQ(t.conditioned_bps, 5e10);
  EXPECT_THROW(throughput({0, 1e5, 1}), ValidationError);
  EXPECT_THROW(throughput({16, -1, 1}), ValidationError);
  EXPECT_THROW(throughput({16, 1e5, 0}), ValidationError);
}

TEST(Throughput, LinearInCells) {
  for (double n : {1.0, 16.0, 1e3, 1e6}) EXPECT_DOUBLE_EQ(throughput({2 * n, 1e5, 3}).raw_bps, 2 * throughput({n, 1e5, 3}).raw_bps);
}

TEST(Energy, DefaultsAtMillionCells) {
  const EnergyModel m;
  const auto e = energy_per_bit(m, 1e6, 1e5, 3);
  // 3 * (3e-13 + 3.3e-3 / 1e11) = 9.99e-13
  EXPECT_NEAR(e.e_bit, 9.99e-13, 1e-25);
  EXPECT_NEAR(e.e_bit, 1e-12, 0.2e-12);
  EXPECT_NEAR(e.ratio_nominal, 1e-7 / 9.99e-13, 1e-6);
  EXPECT_GE(e.ratio_nominal, 1e5);
  EXPECT_LT(e.ratio_low, e.ratio_nominal);
  EXPECT_GT(e.ratio_high, e.ratio_nominal);
}

TEST(Energy, PicojouleVersusHundredNanojoule) {
  EnergyModel m;
  m.e_device = 1e-12;
  m.e_shared = 0;
  const auto e = energy_per_bit(m, 16, 1e5, 1);
  EXPECT_DOUBLE_EQ(e.e_bit, 1e-12);
  EXPECT_NEAR(e.ratio_nominal, 1e5, 1e-6);
}

TEST(Energy, NoSharedPower) {
  EnergyModel m;
  m.e_shared = 0;
  EXPECT_DOUBLE_EQ(energy_per_bit(m, 16, 1e5, 3).e_bit, 3 * m.e_device);
}

TEST(Energy, NonIncreasingInCells) {
  const EnergyModel m;
  double prev = INFINITY;
  for (double n = 1; n <= 1e8; n *= 10) {
    const double e = energy_per_bit(m, n, 1e5, 1).e_bit;
    EXPECT_LE(e, prev);
    prev = e;
  }
}

TEST(Energy, Validation) {
  EnergyModel m;
  m.e_device = -1;
  EXPECT_THROW(energy_per_bit(m, 16, 1e5, 1), ValidationError);
  m = {};
  m.csprng_low = 1e-5;
  EXPECT_THROW(energy_per_bit(m, 16, 1e5, 1), ValidationError);
  EXPECT_THROW(energy_per_bit({}, 0, 1e5, 1), ValidationError);
}

}  // namespace
}  // namespace mtjrng
