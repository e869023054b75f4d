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
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "mtjrng/errors.hpp"

namespace mtjrng::detail {

// Little-endian append/read helpers for the binary file formats.
template <typename UInt>
void put_le(std::vector<std::uint8_t>& out, UInt value) {
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
}

class LeReader {
 public:
  LeReader(std::span<const std::uint8_t> data, const char* format)
      : data_(data), format_(format) {}

  template <typename UInt>
  UInt get() {
    require(sizeof(UInt));
    UInt value = 0;
    for (std::size_t i = 0; i < sizeof(UInt); ++i) {
      value |= static_cast<UInt>(static_cast<UInt>(data_[pos_ + i]) << (8 * i));
    }
    pos_ += sizeof(UInt);
    return value;
  }

  std::span<const std::uint8_t> take(std::size_t n) {
    require(n);
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  void require(std::size_t n) const {
    if (data_.size() - pos_ < n) {
      throw FormatError(std::string(format_) + ": truncated file, missing " +
                        std::to_string(n - (data_.size() - pos_)) + " bytes");
    }
  }

  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  std::span<const std::uint8_t> data_;
  const char* format_;
  std::size_t pos_ = 0;
};

}  // namespace mtjrng::detail
