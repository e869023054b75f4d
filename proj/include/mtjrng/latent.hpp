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
#include <filesystem>
#include <span>
#include <vector>

#include "mtjrng/bitstream.hpp"

namespace mtjrng {

inline constexpr std::size_t kLatentDims = 110;
inline constexpr std::size_t kRandomDims = 100;
inline constexpr std::size_t kClassCount = 10;
inline constexpr std::uint64_t kBitsPerImage = 32 * kRandomDims;  // 3200

// rows x 110 single-precision latent codes. Dims 0..99 carry random values
// in [-1, 1]; dims 100..109 one-hot encode the class label (1..10).
struct LatentMatrix {
  std::size_t rows = 0;
  std::vector<float> values;         // row-major, rows * kLatentDims
  std::vector<std::uint8_t> labels;  // per row, 1..10

  float at(std::size_t row, std::size_t dim) const { return values[row * kLatentDims + dim]; }
  std::span<const float> row(std::size_t r) const {
    return std::span(values).subspan(r * kLatentDims, kLatentDims);
  }

  // Throws ValidationError on any invariant violation.
  void validate() const;

  friend bool operator==(const LatentMatrix&, const LatentMatrix&) = default;
};

// Consecutive 32-bit words, first-consumed bit = MSB; trailing bits dropped.
// Throws InputSizeError below 32 bits.
std::vector<std::uint32_t> words_from_bits(const RawBitstream& stream);

// 2 * word / (2^32 - 1) - 1 in double precision.
double word_to_unit_exact(std::uint32_t word);
// The same value rounded to single precision.
float word_to_unit(std::uint32_t word);

// Row i uses words 100i .. 100i+99. Consumes exactly 3200 * n_images bits.
LatentMatrix build_latent_matrix(const RawBitstream& stream, std::size_t n_images,
                                 std::span<const int> labels);

// LATF: "LATF", u16 version (1), u32 rows, u32 dims (110), rows * dims f32,
// then rows u8 labels. Little-endian.
inline constexpr std::uint16_t kLatfVersion = 1;

std::vector<std::uint8_t> encode_latf(const LatentMatrix& matrix);
LatentMatrix decode_latf(std::span<const std::uint8_t> file);
void write_latent(const std::filesystem::path& path, const LatentMatrix& matrix);
LatentMatrix read_latent(const std::filesystem::path& path);

}  // namespace mtjrng
