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

#include "mtjrng/bitstream.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iterator>

#include "byte_io.hpp"
#include "mtjrng/errors.hpp"

namespace mtjrng {
namespace {

constexpr std::array<std::string_view, 6> kSourceNames = {
    "mtj-raw", "mtj-xor3", "mtj-toeplitz", "lfsr32", "xoroshiro128p", "external"};

std::size_t byte_count(std::uint64_t n_bits) { return static_cast<std::size_t>((n_bits + 7) / 8); }

}  // namespace

std::string_view to_string(SourceTag tag) {
  return kSourceNames.at(static_cast<std::size_t>(tag));
}

SourceTag source_tag_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kSourceNames.size(); ++i) {
    if (kSourceNames[i] == name) return static_cast<SourceTag>(i);
  }
  throw ValidationError("unknown source tag '" + std::string(name) + "'");
}

bool is_valid_source_tag(std::uint8_t raw) { return raw < kSourceNames.size(); }

RawBitstream::RawBitstream(std::uint64_t n_bits, SourceTag src)
    : source(src), n_bits_(n_bits), bytes_(byte_count(n_bits), 0) {}

RawBitstream RawBitstream::from_bits(std::span<const std::uint8_t> bits, SourceTag src) {
  RawBitstream out(bits.size(), src);
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k]) out.set(k, true);
  }
  return out;
}

RawBitstream RawBitstream::from_string(std::string_view bits, SourceTag src) {
  RawBitstream out(bits.size(), src);
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] == '1') {
      out.set(k, true);
    } else if (bits[k] != '0') {
      throw ValidationError("bit string may only contain '0' and '1'");
    }
  }
  return out;
}

void RawBitstream::push_back(bool value) {
  if ((n_bits_ & 7) == 0) bytes_.push_back(0);
  ++n_bits_;
  set(n_bits_ - 1, value);
}

std::vector<std::uint8_t> RawBitstream::unpack(std::uint64_t first, std::uint64_t count) const {
  if (first + count > n_bits_) throw InputSizeError("unpack range exceeds stream length");
  std::vector<std::uint8_t> out(static_cast<std::size_t>(count));
  std::uint64_t k = first;
  std::size_t i = 0;
  // Leading unaligned bits, then whole bytes.
  for (; i < out.size() && (k & 7) != 0; ++i, ++k) out[i] = get(k);
  for (; i + 8 <= out.size(); i += 8, k += 8) {
    const std::uint8_t b = bytes_[k >> 3];
    for (int j = 0; j < 8; ++j) out[i + j] = (b >> (7 - j)) & 1u;
  }
  for (; i < out.size(); ++i, ++k) out[i] = get(k);
  return out;
}

RawBitstream RawBitstream::slice(std::uint64_t first, std::uint64_t count) const {
  if (first + count > n_bits_) throw InputSizeError("slice range exceeds stream length");
  RawBitstream out(count, source);
  out.n_devices = n_devices;
  out.master_seed = master_seed;
  if ((first & 7) == 0) {
    std::copy_n(bytes_.begin() + static_cast<std::ptrdiff_t>(first >> 3), out.bytes_.size(),
                out.bytes_.begin());
    out.truncate(count);
  } else {
    for (std::uint64_t k = 0; k < count; ++k) {
      if (get(first + k)) out.set(k, true);
    }
  }
  return out;
}

void RawBitstream::truncate(std::uint64_t n) {
  if (n > n_bits_) throw InputSizeError("truncate cannot grow a stream");
  n_bits_ = n;
  bytes_.resize(byte_count(n));
  if (n & 7) bytes_.back() &= static_cast<std::uint8_t>(0xFFu << (8 - (n & 7)));
}

std::vector<std::uint8_t> encode_mtjb(const RawBitstream& stream) {
  std::vector<std::uint8_t> out = {'M', 'T', 'J', 'B'};
  out.reserve(kMtjbHeaderSize + stream.bytes().size());
  detail::put_le<std::uint16_t>(out, kMtjbVersion);
  out.push_back(static_cast<std::uint8_t>(stream.source));
  out.push_back(stream.n_devices);
  detail::put_le<std::uint64_t>(out, stream.size());
  detail::put_le<std::uint64_t>(out, stream.master_seed);
  out.insert(out.end(), stream.bytes().begin(), stream.bytes().end());
  return out;
}

RawBitstream decode_mtjb(std::span<const std::uint8_t> file) {
  detail::LeReader in(file, "MTJB");
  auto magic = in.take(4);
  if (!std::equal(magic.begin(), magic.end(), "MTJB")) throw FormatError("MTJB: bad magic");
  if (auto version = in.get<std::uint16_t>(); version != kMtjbVersion) {
    throw FormatError("MTJB: unsupported version " + std::to_string(version));
  }
  const auto tag = in.get<std::uint8_t>();
  if (!is_valid_source_tag(tag)) throw FormatError("MTJB: unknown source tag " + std::to_string(tag));
  const auto n_devices = in.get<std::uint8_t>();
  const auto n_bits = in.get<std::uint64_t>();
  const auto seed = in.get<std::uint64_t>();
  const std::size_t payload = byte_count(n_bits);
  auto bytes = in.take(payload);
  if (in.remaining() != 0) throw FormatError("MTJB: trailing bytes after payload");
  if ((n_bits & 7) && (bytes.back() & (0xFFu >> (n_bits & 7)))) {
    throw FormatError("MTJB: nonzero pad bits");
  }
  RawBitstream out(n_bits, static_cast<SourceTag>(tag));
  std::copy(bytes.begin(), bytes.end(), out.mutable_bytes().begin());
  out.n_devices = n_devices;
  out.master_seed = seed;
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_mtjb(const std::filesystem::path& path, const RawBitstream& stream) {
  write_file_bytes(path, encode_mtjb(stream));
}

RawBitstream read_mtjb(const std::filesystem::path& path) {
  return decode_mtjb(read_file_bytes(path));
}

}  // namespace mtjrng
