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

#include <cstdio>
#include <filesystem>

#include <gtest/gtest.h>

#include "mtjrng/bitstream.hpp"
#include "mtjrng/errors.hpp"

namespace mtjrng {
namespace {

TEST(RawBitstream, PacksMsbFirst) {
  const auto s = RawBitstream::from_string("1000000001");
  ASSERT_EQ(s.size(), 10u);
  ASSERT_EQ(s.bytes().size(), 2u);
  EXPECT_EQ(s.bytes()[0], 0x80);
  EXPECT_EQ(s.bytes()[1], 0x40);
  EXPECT_TRUE(s.get(0));
  EXPECT_FALSE(s.get(1));
  EXPECT_TRUE(s.get(9));
}

TEST(RawBitstream, PushBackMatchesFromBits) {
  RawBitstream a;
  const std::vector<std::uint8_t> bits = {1, 1, 0, 1, 0, 0, 0, 1, 1, 0, 1};
  for (auto b : bits) a.push_back(b);
  EXPECT_EQ(a, RawBitstream::from_bits(bits));
  EXPECT_EQ(a.unpack(), bits);
  EXPECT_EQ(a.unpack(3, 4), (std::vector<std::uint8_t>{1, 0, 0, 0}));
}

TEST(RawBitstream, TruncateZeroesPad) {
  auto s = RawBitstream::from_string("11111111");
  s.truncate(3);
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.bytes()[0], 0xE0);
}

TEST(RawBitstream, SliceKeepsMetadata) {
  auto s = RawBitstream::from_string("0110100111", SourceTag::kMtjRaw);
  s.n_devices = 4;
  s.master_seed = 99;
  const auto t = s.slice(2, 5);
  EXPECT_EQ(t.unpack(), (std::vector<std::uint8_t>{1, 0, 1, 0, 0}));
  EXPECT_EQ(t.source, SourceTag::kMtjRaw);
  EXPECT_EQ(t.n_devices, 4);
  EXPECT_EQ(t.master_seed, 99u);
}

TEST(RawBitstream, RejectsBadCharacters) {
  EXPECT_THROW(RawBitstream::from_string("01x"), ValidationError);
}

TEST(SourceTag, NamesRoundTrip) {
  for (int t = 0; t <= 5; ++t) {
    const auto tag = static_cast<SourceTag>(t);
    EXPECT_EQ(source_tag_from_string(to_string(tag)), tag);
    EXPECT_TRUE(is_valid_source_tag(static_cast<std::uint8_t>(t)));
  }
  EXPECT_FALSE(is_valid_source_tag(6));
  EXPECT_EQ(to_string(SourceTag::kMtjXor3), "mtj-xor3");
  EXPECT_THROW(source_tag_from_string("bogus"), ValidationError);
}

TEST(Mtjb, HeaderLayout) {
  auto s = RawBitstream::from_string("101", SourceTag::kLfsr32);
  s.n_devices = 16;
  s.master_seed = 0x0102030405060708ull;
  const auto file = encode_mtjb(s);
  ASSERT_EQ(file.size(), 25u);
  const std::vector<std::uint8_t> header = {'M', 'T', 'J', 'B', 1, 0, 3, 16, 3, 0, 0, 0, 0, 0, 0, 0,
                                            8,   7,   6,   5,   4, 3, 2, 1};
  EXPECT_TRUE(std::equal(header.begin(), header.end(), file.begin()));
  EXPECT_EQ(file[24], 0xA0);
}

TEST(Mtjb, RoundTrip) {
  RawBitstream s(1001, SourceTag::kMtjRaw);
  for (std::uint64_t k = 0; k < s.size(); k += 3) s.set(k, true);
  s.n_devices = 7;
  s.master_seed = 12345;
  EXPECT_EQ(decode_mtjb(encode_mtjb(s)), s);

  const auto path = std::filesystem::temp_directory_path() / "mtjrng_roundtrip.mtjb";
  write_mtjb(path, s);
  EXPECT_EQ(read_mtjb(path), s);
  std::filesystem::remove(path);
}

TEST(Mtjb, EmptyStreamRoundTrip) {
  RawBitstream s(0, SourceTag::kExternal);
  EXPECT_EQ(decode_mtjb(encode_mtjb(s)), s);
}

TEST(Mtjb, RejectsMalformedFiles) {
  const auto good = encode_mtjb(RawBitstream::from_string("1011001110", SourceTag::kMtjRaw));

  auto bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_mtjb(bad_magic), FormatError);

  auto bad_version = good;
  bad_version[4] = 2;
  EXPECT_THROW(decode_mtjb(bad_version), FormatError);

  auto bad_tag = good;
  bad_tag[6] = 9;
  EXPECT_THROW(decode_mtjb(bad_tag), FormatError);

  auto trailing = good;
  trailing.push_back(0);
  EXPECT_THROW(decode_mtjb(trailing), FormatError);

  auto dirty_pad = good;
  dirty_pad.back() |= 0x01;
  EXPECT_THROW(decode_mtjb(dirty_pad), FormatError);
}

TEST(Mtjb, TruncationNamesMissingBytes) {
  auto file = encode_mtjb(RawBitstream(100, SourceTag::kMtjRaw));
  file.resize(file.size() - 5);
  try {
    decode_mtjb(file);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("missing 5 bytes"), std::string::npos) << e.what();
  }
}

TEST(Mtjb, MissingFileIsIoError) {
  EXPECT_THROW(read_mtjb("/nonexistent/dir/file.mtjb"), IoError);
}

}  // namespace
}  // namespace mtjrng
