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

#include "mtjrng/conditioning.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>

#include "mtjrng/errors.hpp"

namespace mtjrng {
namespace {

constexpr int parity3(unsigned v) { return (0x96 >> (v & 7)) & 1; }

std::size_t next_pow2(std::size_t v) { return std::bit_ceil(v); }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

void copy_provenance(const RawBitstream& from, RawBitstream& to) {
  to.n_devices = from.n_devices;
  to.master_seed = from.master_seed;
}

}  // namespace

RawBitstream xor3(const RawBitstream& input, Xor3Grouping grouping, std::size_t stride) {
  const std::uint64_t n = input.size();
  if (n < 3) throw InputSizeError("xor3 needs at least 3 input bits");
  const std::uint64_t n_out = n / 3;
  RawBitstream out(n_out, SourceTag::kMtjXor3);
  copy_provenance(input, out);

  if (grouping == Xor3Grouping::kTemporal) {
    // 24 input bits (3 bytes) -> one output byte.
    const auto in = input.bytes();
    auto dst = out.mutable_bytes();
    const auto full_bytes = static_cast<long>(n_out / 8);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < full_bytes; ++b) {
      const unsigned v = (unsigned{in[3 * b]} << 16) | (unsigned{in[3 * b + 1]} << 8) | in[3 * b + 2];
      unsigned byte = 0;
      for (int t = 0; t < 8; ++t) byte |= static_cast<unsigned>(parity3(v >> (21 - 3 * t))) << (7 - t);
      dst[b] = static_cast<std::uint8_t>(byte);
    }
    for (std::uint64_t j = static_cast<std::uint64_t>(full_bytes) * 8; j < n_out; ++j) {
      out.set(j, input.get(3 * j) ^ input.get(3 * j + 1) ^ input.get(3 * j + 2));
    }
    return out;
  }

  if (stride == 0) throw ValidationError("xor3 stride must be positive");
  const std::uint64_t chunk = 3 * stride;
  const std::uint64_t chunks = n / chunk;
  std::uint64_t j = 0;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    const std::uint64_t base = c * chunk;
    for (std::uint64_t i = 0; i < stride; ++i, ++j) {
      out.set(j, input.get(base + i) ^ input.get(base + stride + i) ^ input.get(base + 2 * stride + i));
    }
  }
  // Tail shorter than one chunk falls back to consecutive triples.
  for (std::uint64_t k = chunks * chunk; k + 3 <= n; k += 3, ++j) {
    out.set(j, input.get(k) ^ input.get(k + 1) ^ input.get(k + 2));
  }
  return out;
}

void ToeplitzConfig::validate() const {
  if (n == 0 || m == 0 || m >= n) throw ConfigError("Toeplitz config requires 0 < m < n");
  if (seed.size() != n + m - 1) {
    throw ConfigError("Toeplitz seed must hold n + m - 1 = " + std::to_string(n + m - 1) +
                      " bits, got " + std::to_string(seed.size()));
  }
  if (std::any_of(seed.begin(), seed.end(), [](std::uint8_t b) { return b > 1; })) {
    throw ConfigError("Toeplitz seed bits must be 0 or 1");
  }
}

ToeplitzConfig ToeplitzConfig::from_hex(std::size_t n, std::size_t m, std::string_view hex) {
  ToeplitzConfig cfg;
  cfg.n = n;
  cfg.m = m;
  if (n == 0 || m == 0 || m >= n) throw ConfigError("Toeplitz config requires 0 < m < n");
  const std::size_t bits = n + m - 1;
  const std::size_t bytes = (bits + 7) / 8;
  if (hex.size() != 2 * bytes) {
    throw ConfigError("Toeplitz seed hex must have " + std::to_string(2 * bytes) +
                      " digits for n + m - 1 = " + std::to_string(bits) + " bits, got " +
                      std::to_string(hex.size()));
  }
  cfg.seed.resize(bits);
  for (std::size_t i = 0; i < bytes; ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw ConfigError("Toeplitz seed contains a non-hex digit");
    const int byte = (hi << 4) | lo;
    for (int b = 0; b < 8; ++b) {
      const std::size_t k = 8 * i + static_cast<std::size_t>(b);
      const auto bit = static_cast<std::uint8_t>((byte >> (7 - b)) & 1);
      if (k < bits) {
        cfg.seed[k] = bit;
      } else if (bit) {
        throw ConfigError("Toeplitz seed hex has nonzero pad bits");
      }
    }
  }
  return cfg;
}

std::string ToeplitzConfig::seed_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string hex;
  hex.reserve((seed.size() + 7) / 8 * 2);
  for (std::size_t i = 0; i < seed.size(); i += 8) {
    unsigned byte = 0;
    for (std::size_t b = 0; b < 8 && i + b < seed.size(); ++b) byte |= unsigned{seed[i + b]} << (7 - b);
    hex.push_back(kDigits[byte >> 4]);
    hex.push_back(kDigits[byte & 15]);
  }
  return hex;
}

ToeplitzConfig ToeplitzConfig::from_stream(std::size_t n, std::size_t m, const RawBitstream& stream,
                                           std::uint64_t offset) {
  if (n == 0 || m == 0 || m >= n) throw ConfigError("Toeplitz config requires 0 < m < n");
  if (offset + n + m - 1 > stream.size()) {
    throw InputSizeError("stream too short to draw " + std::to_string(n + m - 1) + " seed bits");
  }
  ToeplitzConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.seed = stream.unpack(offset, n + m - 1);
  return cfg;
}

ToeplitzHasher::ToeplitzHasher(ToeplitzConfig config)
    : config_((config.validate(), std::move(config))),
      fft_(next_pow2(config_.n + config_.m - 1)),
      seed_spectrum_(fft_.spectrum_size()) {
  if (config_.n > kMaxToeplitzInput) {
    throw PrecisionError("Toeplitz block length " + std::to_string(config_.n) +
                         " exceeds the exact-rounding limit of 2^20 bits");
  }
  // No wraparound: outputs read indices n-1 .. n+m-2 of a length >= n+m-1
  // circular convolution, and every contributing seed index is in range.
  std::vector<double> real(fft_.size(), 0.0);
  std::copy(config_.seed.begin(), config_.seed.end(), real.begin());
  fft_.forward(real, seed_spectrum_);
}

void ToeplitzHasher::hash(std::span<const std::uint8_t> block, std::span<std::uint8_t> out) const {
  const std::size_t n = config_.n;
  const std::size_t m = config_.m;
  if (block.size() != n || out.size() != m) throw ValidationError("Toeplitz block size mismatch");
  thread_local std::vector<double> real;
  thread_local std::vector<std::complex<double>> spec;
  real.assign(fft_.size(), 0.0);
  spec.resize(fft_.spectrum_size());
  std::copy(block.begin(), block.end(), real.begin());
  fft_.forward(real, spec);
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= seed_spectrum_[k];
  fft_.inverse(spec, real);
  const double scale = 1.0 / static_cast<double>(fft_.size());
  for (std::size_t i = 0; i < m; ++i) {
    const double v = real[i + n - 1] * scale;
    const double r = std::nearbyint(v);
    if (std::abs(r - v) > 0.25) {
      throw PrecisionError("FFT convolution residue " + std::to_string(std::abs(r - v)) +
                           " exceeds 0.25; block length too large for double precision");
    }
    out[i] = static_cast<std::uint8_t>(static_cast<std::int64_t>(r) & 1);
  }
}

RawBitstream toeplitz_extract(const RawBitstream& input, const ToeplitzConfig& config) {
  const ToeplitzHasher hasher(config);
  const std::size_t n = config.n;
  const std::size_t m = config.m;
  if (input.size() < n) throw InputSizeError("Toeplitz input shorter than one block");
  const auto blocks = static_cast<long>(input.size() / n);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(blocks) * m);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 8)
  for (long b = 0; b < blocks; ++b) {
    try {
      const auto block = input.unpack(static_cast<std::uint64_t>(b) * n, n);
      hasher.hash(block, std::span(bits).subspan(static_cast<std::size_t>(b) * m, m));
    } catch (...) {
#pragma omp critical(mtjrng_toeplitz)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  auto out = RawBitstream::from_bits(bits, SourceTag::kMtjToeplitz);
  copy_provenance(input, out);
  return out;
}

RawBitstream toeplitz_extract_reference(const RawBitstream& input, const ToeplitzConfig& config) {
  config.validate();
  const std::size_t n = config.n;
  const std::size_t m = config.m;
  if (input.size() < n) throw InputSizeError("Toeplitz input shorter than one block");
  const std::size_t seed_len = n + m - 1;
  const std::size_t x_words = (n + 63) / 64;

  // Seed packed LSB-first with two zero words of slack for window reads.
  std::vector<std::uint64_t> seed_words((seed_len + 63) / 64 + 2, 0);
  for (std::size_t k = 0; k < seed_len; ++k) {
    if (config.seed[k]) seed_words[k >> 6] |= 1ull << (k & 63);
  }
  auto window = [&](std::size_t offset) {
    const std::size_t w = offset >> 6;
    const unsigned s = offset & 63;
    return s == 0 ? seed_words[w] : (seed_words[w] >> s) | (seed_words[w + 1] << (64 - s));
  };

  const std::uint64_t blocks = input.size() / n;
  RawBitstream out(blocks * m, SourceTag::kMtjToeplitz);
  std::vector<std::uint64_t> xr(x_words);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    // y_i = sum_j seed[i + n - 1 - j] x_j = sum_r seed[i + r] x_{n-1-r}.
    std::fill(xr.begin(), xr.end(), 0);
    for (std::size_t r = 0; r < n; ++r) {
      if (input.get(b * n + (n - 1 - r))) xr[r >> 6] |= 1ull << (r & 63);
    }
    for (std::size_t i = 0; i < m; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t w = 0; w < x_words; ++w) acc ^= window(i + 64 * w) & xr[w];
      if (std::popcount(acc) & 1) out.set(b * m + i, true);
    }
  }
  copy_provenance(input, out);
  return out;
}

EntropyEstimate estimate_min_entropy(const RawBitstream& input) {
  const std::uint64_t n = input.size();
  if (n < kMinEntropySamples) {
    throw InputSizeError("min-entropy estimate needs at least " + std::to_string(kMinEntropySamples) +
                         " bits, got " + std::to_string(n));
  }
  std::uint64_t ones = 0;
  for (std::uint8_t b : input.bytes()) ones += static_cast<std::uint64_t>(std::popcount(b));
  const double p_hat = static_cast<double>(std::max(ones, n - ones)) / static_cast<double>(n);
  const double upper = std::min(1.0, p_hat + 2.576 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n)));
  const double h = upper >= 1.0 ? 0.0 : -std::log2(upper);
  return EntropyEstimate{h, upper, n};
}

}  // namespace mtjrng
