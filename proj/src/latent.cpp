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

#include "mtjrng/latent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "byte_io.hpp"
#include "mtjrng/errors.hpp"

namespace mtjrng {

void LatentMatrix::validate() const {
  if (values.size() != rows * kLatentDims) throw ValidationError("latent matrix has wrong value count");
  if (labels.size() != rows) throw ValidationError("latent matrix needs one label per row");
  for (std::size_t r = 0; r < rows; ++r) {
    const int label = labels[r];
    if (label < 1 || label > static_cast<int>(kClassCount)) {
      throw ValidationError("row " + std::to_string(r) + ": label " + std::to_string(label) + " outside 1..10");
    }
    for (std::size_t d = 0; d < kRandomDims; ++d) {
      const float v = at(r, d);
      if (!(v >= -1.0f && v <= 1.0f)) {
        throw ValidationError("row " + std::to_string(r) + ": random dim " + std::to_string(d) + " outside [-1, 1]");
      }
    }
    for (std::size_t c = 0; c < kClassCount; ++c) {
      const float expect = (static_cast<int>(c) + 1 == label) ? 1.0f : 0.0f;
      if (at(r, kRandomDims + c) != expect) {
        throw ValidationError("row " + std::to_string(r) + ": class dims are not one-hot for label " +
                              std::to_string(label));
      }
    }
  }
}

std::vector<std::uint32_t> words_from_bits(const RawBitstream& stream) {
  if (stream.size() < 32) throw InputSizeError("need at least 32 bits to form a word");
  const std::size_t n_words = static_cast<std::size_t>(stream.size() / 32);
  const auto bytes = stream.bytes();
  std::vector<std::uint32_t> words(n_words);
  for (std::size_t w = 0; w < n_words; ++w) {
    const std::size_t b = 4 * w;
    words[w] = (std::uint32_t{bytes[b]} << 24) | (std::uint32_t{bytes[b + 1]} << 16) |
               (std::uint32_t{bytes[b + 2]} << 8) | std::uint32_t{bytes[b + 3]};
  }
  return words;
}

double word_to_unit_exact(std::uint32_t word) {
  // Integer numerator keeps the result to a single rounding.
  const std::int64_t num = 2 * static_cast<std::int64_t>(word) - 4294967295LL;
  return static_cast<double>(num) / 4294967295.0;
}

float word_to_unit(std::uint32_t word) { return static_cast<float>(word_to_unit_exact(word)); }

LatentMatrix build_latent_matrix(const RawBitstream& stream, std::size_t n_images,
                                 std::span<const int> labels) {
  if (labels.size() != n_images) {
    throw ValidationError("expected " + std::to_string(n_images) + " labels, got " + std::to_string(labels.size()));
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 1 || labels[i] > static_cast<int>(kClassCount)) {
      throw ValidationError("label " + std::to_string(labels[i]) + " at row " + std::to_string(i) +
                            " outside 1..10");
    }
  }
  const std::uint64_t need = kBitsPerImage * n_images;
  if (stream.size() < need) {
    throw InputSizeError("latent matrix of " + std::to_string(n_images) + " rows needs " + std::to_string(need) +
                         " bits, stream has " + std::to_string(stream.size()));
  }
  LatentMatrix out;
  out.rows = n_images;
  out.values.assign(n_images * kLatentDims, 0.0f);
  out.labels.resize(n_images);
  const auto bytes = stream.bytes();
  // Row r starts at bit 3200 r = byte 400 r, so offsets are known up front.
#pragma omp parallel for schedule(static)
  for (long r = 0; r < static_cast<long>(n_images); ++r) {
    const std::size_t base = static_cast<std::size_t>(r) * (kBitsPerImage / 8);
    float* row = out.values.data() + static_cast<std::size_t>(r) * kLatentDims;
    for (std::size_t d = 0; d < kRandomDims; ++d) {
      const std::size_t b = base + 4 * d;
      const std::uint32_t word = (std::uint32_t{bytes[b]} << 24) | (std::uint32_t{bytes[b + 1]} << 16) |
                                 (std::uint32_t{bytes[b + 2]} << 8) | std::uint32_t{bytes[b + 3]};
      row[d] = word_to_unit(word);
    }
    row[kRandomDims + static_cast<std::size_t>(labels[r] - 1)] = 1.0f;
    out.labels[static_cast<std::size_t>(r)] = static_cast<std::uint8_t>(labels[r]);
  }
  return out;
}

std::vector<std::uint8_t> encode_latf(const LatentMatrix& matrix) {
  matrix.validate();
  std::vector<std::uint8_t> out = {'L', 'A', 'T', 'F'};
  out.reserve(14 + matrix.values.size() * 4 + matrix.rows);
  detail::put_le<std::uint16_t>(out, kLatfVersion);
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(matrix.rows));
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(kLatentDims));
  for (float v : matrix.values) detail::put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(v));
  out.insert(out.end(), matrix.labels.begin(), matrix.labels.end());
  return out;
}

LatentMatrix decode_latf(std::span<const std::uint8_t> file) {
  detail::LeReader in(file, "LATF");
  const auto magic = in.take(4);
  if (!std::equal(magic.begin(), magic.end(), "LATF")) throw FormatError("LATF: bad magic");
  if (const auto version = in.get<std::uint16_t>(); version != kLatfVersion) {
    throw FormatError("LATF: unsupported version " + std::to_string(version));
  }
  LatentMatrix m;
  m.rows = in.get<std::uint32_t>();
  if (const auto dims = in.get<std::uint32_t>(); dims != kLatentDims) {
    throw FormatError("LATF: dims must be 110, got " + std::to_string(dims));
  }
  in.require(m.rows * kLatentDims * 4 + m.rows);
  m.values.resize(m.rows * kLatentDims);
  for (auto& v : m.values) v = std::bit_cast<float>(in.get<std::uint32_t>());
  const auto labels = in.take(m.rows);
  m.labels.assign(labels.begin(), labels.end());
  if (in.remaining() != 0) throw FormatError("LATF: trailing bytes after labels");
  try {
    m.validate();
  } catch (const ValidationError& e) {
    throw FormatError(std::string("LATF: ") + e.what());
  }
  return m;
}

void write_latent(const std::filesystem::path& path, const LatentMatrix& matrix) {
  write_file_bytes(path, encode_latf(matrix));
}

LatentMatrix read_latent(const std::filesystem::path& path) { return decode_latf(read_file_bytes(path)); }

}  // namespace mtjrng
