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

#include <cstdint>
#include <span>
#include <vector>

#include "mtjrng/bitstream.hpp"

namespace mtjrng {

// Fibonacci LFSR, right-shifting, output taken from the LSB.
//
// Taps are numbered 1..width with tap `width` being the output stage, so the
// produced sequence obeys s[k] = XOR over taps t of s[k - t]. The default
// {32, 22, 2, 1} is the primitive x^32 + x^22 + x^2 + x + 1 (period 2^32 - 1).
class Lfsr {
 public:
  static constexpr int kDefaultTaps[] = {32, 22, 2, 1};

  // Throws InvalidSeedError for a zero register, ValidationError for bad taps.
  Lfsr(std::uint64_t seed, std::span<const int> taps = kDefaultTaps, int width = 32);

  // Returns the current LSB and advances one step.
  bool next() noexcept {
    const bool out = reg_ & 1u;
    const auto feedback = static_cast<std::uint64_t>(__builtin_popcountll(reg_ & tap_mask_) & 1);
    reg_ = (reg_ >> 1) | (feedback << (width_ - 1));
    return out;
  }

  std::uint64_t state() const noexcept { return reg_; }
  int width() const noexcept { return width_; }
  const std::vector<int>& taps() const noexcept { return taps_; }

 private:
  std::uint64_t reg_;
  std::uint64_t tap_mask_ = 0;
  int width_;
  std::vector<int> taps_;
};

RawBitstream lfsr32_stream(std::uint32_t seed, std::uint64_t n_bits,
                           std::span<const int> taps = Lfsr::kDefaultTaps);

class Xoroshiro128p {
 public:
  // Throws InvalidSeedError when both words are zero.
  Xoroshiro128p(std::uint64_t s0, std::uint64_t s1);
  // Expands a single 64-bit seed with splitmix64.
  static Xoroshiro128p from_seed(std::uint64_t seed);

  std::uint64_t next() noexcept {
    const std::uint64_t a = s0_;
    std::uint64_t b = s1_;
    const std::uint64_t result = a + b;
    b ^= a;
    s0_ = rotl(a, 24) ^ b ^ (b << 16);
    s1_ = rotl(b, 37);
    return result;
  }

  std::uint64_t s0() const noexcept { return s0_; }
  std::uint64_t s1() const noexcept { return s1_; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s0_;
  std::uint64_t s1_;
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

// Output words are emitted MSB-first; a trailing partial word is truncated.
RawBitstream xoroshiro128p_stream(Xoroshiro128p generator, std::uint64_t n_bits);
RawBitstream xoroshiro128p_stream(std::uint64_t seed, std::uint64_t n_bits);

}  // namespace mtjrng
