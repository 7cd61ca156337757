// Copyright 2026 The dmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "dmc/errors.hpp"

namespace dmc {

/// Uniform mid-bin scalar quantizer over [min, max] with 2^bits levels.
/// Dequantization returns bin centers, so the absolute error is bounded by
/// half a bin width. A degenerate range (min == max) quantizes everything
/// to level 0 and dequantizes to exactly min.
///
/// Bounds are intentionally held as float: the bitstream stores float
/// ranges, and encoder and decoder must quantize against identical values.
class UniformQuantizer {
public:
  UniformQuantizer(float min, float max, int bits);

  uint32_t quantize(double x) const;
  double dequantize(uint32_t level) const;

  bool degenerate() const { return degenerate_; }
  int bits() const { return bits_; }
  uint32_t levels() const { return levels_; }

private:
  double min_, width_;
  uint32_t levels_;
  int bits_;
  bool degenerate_;
};

/// MSB-first bit packer. Values are written into consecutive bits with no
/// per-value alignment; flush() pads the final partial byte with zeros.
class BitWriter {
public:
  void put(uint32_t value, int bits);
  void flush();
  const std::vector<uint8_t>& bytes() const { return bytes_; }
  std::vector<uint8_t> take();

private:
  std::vector<uint8_t> bytes_;
  uint32_t pending_ = 0;  // bits accumulated MSB-side in the low `fill_` bits
  int fill_ = 0;
};

/// Counterpart of BitWriter over a fixed byte span.
class BitReader {
public:
  BitReader(const uint8_t* data, size_t size) : data_(data), size_(size) {}

  uint32_t get(int bits);
  size_t bytes_consumed() const { return pos_ + (fill_ > 0 ? 1 : 0); }

private:
  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
  int fill_ = 0;  // bits already consumed from data_[pos_]
};

// Total bytes needed to hold `count` values of `bits` bits, MSB-first packed.
inline size_t packed_byte_size(size_t count, int bits) {
  return (count * static_cast<size_t>(bits) + 7) / 8;
}

}  // namespace dmc
