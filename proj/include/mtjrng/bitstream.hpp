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
#include <string>
#include <string_view>
#include <vector>

namespace mtjrng {

enum class SourceTag : std::uint8_t {
  kMtjRaw = 0,
  kMtjXor3 = 1,
  kMtjToeplitz = 2,
  kLfsr32 = 3,
  kXoroshiro128p = 4,
  kExternal = 5,
};

std::string_view to_string(SourceTag tag);
// Throws ValidationError on an unknown name.
SourceTag source_tag_from_string(std::string_view name);
bool is_valid_source_tag(std::uint8_t raw);

// Packed bit sequence. Bit k lives in byte k >> 3 at position 7 - (k & 7),
// i.e. MSB-first. Pad bits past n_bits are always zero.
class RawBitstream {
 public:
  RawBitstream() = default;
  explicit RawBitstream(std::uint64_t n_bits, SourceTag source = SourceTag::kExternal);

  static RawBitstream from_bits(std::span<const std::uint8_t> bits,
                                SourceTag source = SourceTag::kExternal);
  // Accepts '0'/'1' characters only.
  static RawBitstream from_string(std::string_view bits,
                                  SourceTag source = SourceTag::kExternal);

  std::uint64_t size() const noexcept { return n_bits_; }
  bool empty() const noexcept { return n_bits_ == 0; }

  bool get(std::uint64_t k) const noexcept {
    return (bytes_[k >> 3] >> (7 - (k & 7))) & 1u;
  }
  void set(std::uint64_t k, bool value) noexcept {
    const auto mask = static_cast<std::uint8_t>(0x80u >> (k & 7));
    if (value) {
      bytes_[k >> 3] |= mask;
    } else {
      bytes_[k >> 3] &= static_cast<std::uint8_t>(~mask);
    }
  }
  void push_back(bool value);

  // Unpacks [first, first + count) into one byte per bit (0 or 1).
  std::vector<std::uint8_t> unpack(std::uint64_t first, std::uint64_t count) const;
  std::vector<std::uint8_t> unpack() const { return unpack(0, n_bits_); }

  // Contiguous sub-range copy; metadata is preserved.
  RawBitstream slice(std::uint64_t first, std::uint64_t count) const;

  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  std::span<std::uint8_t> mutable_bytes() noexcept { return bytes_; }

  // Shrinks to n bits, zeroing the pad.
  void truncate(std::uint64_t n);

  SourceTag source = SourceTag::kExternal;
  std::uint8_t n_devices = 0;
  std::uint64_t master_seed = 0;
  // In-memory provenance; not serialized. Streams are always cycle-major.
  std::uint64_t cycles = 0;

  friend bool operator==(const RawBitstream& a, const RawBitstream& b) {
    return a.n_bits_ == b.n_bits_ && a.bytes_ == b.bytes_ && a.source == b.source &&
           a.n_devices == b.n_devices && a.master_seed == b.master_seed;
  }

 private:
  std::uint64_t n_bits_ = 0;
  std::vector<std::uint8_t> bytes_;
};

// MTJB container: "MTJB", u16 version (1), u8 source tag, u8 n_devices,
// u64 n_bits, u64 master_seed, then the packed payload. Little-endian.
inline constexpr std::uint16_t kMtjbVersion = 1;
inline constexpr std::size_t kMtjbHeaderSize = 4 + 2 + 1 + 1 + 8 + 8;

std::vector<std::uint8_t> encode_mtjb(const RawBitstream& stream);
RawBitstream decode_mtjb(std::span<const std::uint8_t> file);

void write_mtjb(const std::filesystem::path& path, const RawBitstream& stream);
RawBitstream read_mtjb(const std::filesystem::path& path);

// Whole-file helpers shared by the binary formats.
std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace mtjrng
