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

#include "mtjrng/prng.hpp"

#include <algorithm>
#include <string>

#include "mtjrng/errors.hpp"

namespace mtjrng {

Lfsr::Lfsr(std::uint64_t seed, std::span<const int> taps, int width)
    : reg_(seed), width_(width), taps_(taps.begin(), taps.end()) {
  if (width < 2 || width > 64) throw ValidationError("LFSR width must be in [2, 64]");
  const std::uint64_t full = width == 64 ? ~0ull : ((1ull << width) - 1);
  if (seed & ~full) throw InvalidSeedError("LFSR seed wider than the register");
  if (seed == 0) throw InvalidSeedError("LFSR register must be nonzero");
  if (taps_.empty()) throw ValidationError("LFSR needs at least one tap");
  for (int t : taps_) {
    if (t < 1 || t > width) throw ValidationError("LFSR tap " + std::to_string(t) + " out of range");
    tap_mask_ |= 1ull << (width - t);
  }
}

RawBitstream lfsr32_stream(std::uint32_t seed, std::uint64_t n_bits, std::span<const int> taps) {
  Lfsr lfsr(seed, taps, 32);
  RawBitstream out(n_bits, SourceTag::kLfsr32);
  auto bytes = out.mutable_bytes();
  for (std::uint64_t k = 0; k < n_bits; k += 8) {
    std::uint8_t byte = 0;
    const auto take = std::min<std::uint64_t>(8, n_bits - k);
    for (std::uint64_t j = 0; j < take; ++j) byte |= static_cast<std::uint8_t>(lfsr.next() << (7 - j));
    bytes[k >> 3] = byte;
  }
  out.master_seed = seed;
  return out;
}

Xoroshiro128p::Xoroshiro128p(std::uint64_t s0, std::uint64_t s1) : s0_(s0), s1_(s1) {
  if (s0 == 0 && s1 == 0) throw InvalidSeedError("xoroshiro128+ state must not be all zero");
}

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Xoroshiro128p Xoroshiro128p::from_seed(std::uint64_t seed) {
  std::uint64_t sm = seed;
  const std::uint64_t a = splitmix64(sm);
  const std::uint64_t b = splitmix64(sm);
  return Xoroshiro128p(a, b);
}

RawBitstream xoroshiro128p_stream(Xoroshiro128p generator, std::uint64_t n_bits) {
  RawBitstream out(n_bits, SourceTag::kXoroshiro128p);
  auto bytes = out.mutable_bytes();
  for (std::size_t i = 0; i < bytes.size(); i += 8) {
    const std::uint64_t word = generator.next();
    const std::size_t take = std::min<std::size_t>(8, bytes.size() - i);
    for (std::size_t j = 0; j < take; ++j) bytes[i + j] = static_cast<std::uint8_t>(word >> (56 - 8 * j));
  }
  out.truncate(n_bits);
  return out;
}

RawBitstream xoroshiro128p_stream(std::uint64_t seed, std::uint64_t n_bits) {
  auto out = xoroshiro128p_stream(Xoroshiro128p::from_seed(seed), n_bits);
  out.master_seed = seed;
  return out;
}

}  // namespace mtjrng
