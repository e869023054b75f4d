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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mtjrng/bitstream.hpp"
#include "mtjrng/fft.hpp"

namespace mtjrng {

// ---------------------------------------------------------------------------
// XOR-3 corrector
// ---------------------------------------------------------------------------

enum class Xor3Grouping {
  kTemporal,  // three consecutive bits of the interleaved stream
  kStrided,   // bits i, i+S, i+2S within consecutive chunks of 3S bits
};

// Output bit j is the parity of one group of three input bits; output length
// is floor(n_bits / 3) for either grouping. Throws InputSizeError when the
// input holds fewer than 3 bits. `stride` is only read for kStrided.
RawBitstream xor3(const RawBitstream& input, Xor3Grouping grouping = Xor3Grouping::kTemporal,
                  std::size_t stride = 16);

// ---------------------------------------------------------------------------
// Toeplitz extractor
// ---------------------------------------------------------------------------

// T[i][j] = seed[i - j + n - 1], i in [0, m), j in [0, n).
struct ToeplitzConfig {
  std::size_t n = 8192;
  std::size_t m = 4096;
  std::vector<std::uint8_t> seed;  // n + m - 1 bits, one byte per bit

  // Throws ConfigError.
  void validate() const;
  double compression() const { return static_cast<double>(m) / static_cast<double>(n); }

  // Seed as hex; bit 0 is the MSB of the first byte, pad bits zero.
  static ToeplitzConfig from_hex(std::size_t n, std::size_t m, std::string_view hex);
  std::string seed_hex() const;
  // Draws the n + m - 1 seed bits from `stream` starting at `offset`.
  static ToeplitzConfig from_stream(std::size_t n, std::size_t m, const RawBitstream& stream,
                                    std::uint64_t offset = 0);
};

// Exactness guard: integer convolution sums stay far below 2^53 for n <= 2^20.
inline constexpr std::size_t kMaxToeplitzInput = std::size_t{1} << 20;

// Precomputes the seed spectrum; hashing one block is then one forward and one
// inverse real FFT. Thread-safe for concurrent hash() calls.
class ToeplitzHasher {
 public:
  explicit ToeplitzHasher(ToeplitzConfig config);

  const ToeplitzConfig& config() const noexcept { return config_; }
  std::size_t fft_size() const noexcept { return fft_.size(); }

  // block: n bits (0/1). out: m bits (0/1). Throws PrecisionError if any
  // convolution output lies more than 0.25 from an integer.
  void hash(std::span<const std::uint8_t> block, std::span<std::uint8_t> out) const;

 private:
  ToeplitzConfig config_;
  RealFft fft_;
  std::vector<std::complex<double>> seed_spectrum_;
};

// Consumes consecutive n-bit blocks (a trailing partial block is dropped) and
// emits m bits per block via FFT convolution. Block-parallel.
RawBitstream toeplitz_extract(const RawBitstream& input, const ToeplitzConfig& config);

// Direct GF(2) matrix-vector product with packed words; serial reference.
RawBitstream toeplitz_extract_reference(const RawBitstream& input, const ToeplitzConfig& config);

// ---------------------------------------------------------------------------
// Min-entropy (most-common-value estimator)
// ---------------------------------------------------------------------------

struct EntropyEstimate {
  double h_min_per_bit = 0.0;
  double p_max_upper = 1.0;
  std::uint64_t sample_size = 0;
};

inline constexpr std::uint64_t kMinEntropySamples = 10'000;

// 99% upper bound on the most common value's probability. Throws
// InputSizeError below kMinEntropySamples bits.
EntropyEstimate estimate_min_entropy(const RawBitstream& input);

}  // namespace mtjrng
