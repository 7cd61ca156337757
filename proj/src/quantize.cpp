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

#include "dmc/quantize.hpp"

#include <cmath>
#include <string>

namespace dmc {

UniformQuantizer::UniformQuantizer(float min, float max, int bits) : bits_(bits) {
  if (bits < 1 || bits > 16) {
    throw InvalidBits("bit depth " + std::to_string(bits) + " outside 1..16");
  }
  if (min > max) throw ConfigError("quantizer range has min > max");
  levels_ = 1u << bits;
  min_ = static_cast<double>(min);
  degenerate_ = (min == max);
  width_ = degenerate_ ? 0.0 : (static_cast<double>(max) - min_) / levels_;
}

uint32_t UniformQuantizer::quantize(double x) const {
  if (degenerate_) return 0;
  const double t = std::floor((x - min_) / width_);
  if (t <= 0.0) return 0;
  if (t >= static_cast<double>(levels_ - 1)) return levels_ - 1;
  return static_cast<uint32_t>(t);
}

double UniformQuantizer::dequantize(uint32_t level) const {
  if (level >= levels_) {
    throw CorruptPayload("packed value " + std::to_string(level) + " >= 2^" +
                         std::to_string(bits_));
  }
  if (degenerate_) return min_;
  return min_ + (static_cast<double>(level) + 0.5) * width_;
}

void BitWriter::put(uint32_t value, int bits) {
  if (bits < 1 || bits > 32) throw InvalidBits("pack width outside 1..32");
  for (int b = bits - 1; b >= 0; --b) {
    pending_ = (pending_ << 1) | ((value >> b) & 1u);
    if (++fill_ == 8) {
      bytes_.push_back(static_cast<uint8_t>(pending_));
      pending_ = 0;
      fill_ = 0;
    }
  }
}

void BitWriter::flush() {
  if (fill_ > 0) {
    bytes_.push_back(static_cast<uint8_t>(pending_ << (8 - fill_)));
    pending_ = 0;
    fill_ = 0;
  }
}

std::vector<uint8_t> BitWriter::take() {
  flush();
  return std::move(bytes_);
}

uint32_t BitReader::get(int bits) {
  uint32_t value = 0;
  for (int b = 0; b < bits; ++b) {
    if (pos_ >= size_) throw CorruptStream("packed payload ends prematurely");
    const int shift = 7 - fill_;
    value = (value << 1) | ((data_[pos_] >> shift) & 1u);
    if (++fill_ == 8) {
      fill_ = 0;
      ++pos_;
    }
  }
  return value;
}

}  // namespace dmc
