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

#include "dmc/stream.hpp"

#include <bit>
#include <cstring>

#include "dmc/quantize.hpp"

namespace dmc {

namespace {

constexpr char kMagic[4] = {'D', 'M', 'C', '1'};
constexpr uint8_t kKnownFlags = kFlagRawPayload | kFlagNormalizedLaplacian;

class ByteWriter {
public:
  explicit ByteWriter(std::vector<uint8_t>& out) : out_(out) {}

  void u8(uint8_t v) { out_.push_back(v); }
  void u16(uint16_t v) {
    out_.push_back(static_cast<uint8_t>(v));
    out_.push_back(static_cast<uint8_t>(v >> 8));
  }
  void u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  void u64(uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  void f32(float v) { u32(std::bit_cast<uint32_t>(v)); }
  void f64(double v) { u64(std::bit_cast<uint64_t>(v)); }
  void bytes(const std::vector<uint8_t>& b) { out_.insert(out_.end(), b.begin(), b.end()); }
  size_t size() const { return out_.size(); }

private:
  std::vector<uint8_t>& out_;
};

class ByteReader {
public:
  ByteReader(const uint8_t* data, size_t size) : data_(data), size_(size) {}

  uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  uint16_t u16() {
    need(2);
    uint16_t v = static_cast<uint16_t>(data_[pos_]) |
                 static_cast<uint16_t>(data_[pos_ + 1]) << 8;
    pos_ += 2;
    return v;
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(data_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  uint64_t u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(data_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  double f64() { return std::bit_cast<double>(u64()); }

  const uint8_t* slice(size_t count) {
    need(count);
    const uint8_t* p = data_ + pos_;
    pos_ += count;
    return p;
  }

  size_t position() const { return pos_; }
  size_t remaining() const { return size_ - pos_; }

private:
  void need(size_t count) const {
    if (size_ - pos_ < count) {
      throw CorruptStream("unexpected end of stream at byte " + std::to_string(pos_));
    }
  }

  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw CorruptStream(what);
}

size_t coeff_payload_bytes(const CoeffBlock& block, size_t width) {
  size_t bits = 0;
  for (const QuantRow& row : block.rows) {
    if (!(row.min == row.max)) bits += static_cast<size_t>(row.bits) * width;
  }
  return (bits + 7) / 8;
}

}  // namespace

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Pca: return "pca";
    case Variant::PcaQ: return "pca_q";
    case Variant::V2v: return "v2v";
    case Variant::PcaQs: return "pca_qs";
    case Variant::PcaQp: return "pca_qp";
    case Variant::Blocks: return "blocks";
    case Variant::PerMeshGft: return "per_mesh_gft";
  }
  return "unknown";
}

std::optional<Variant> variant_from_name(const std::string& name) {
  for (uint8_t i = 0; i <= static_cast<uint8_t>(Variant::PerMeshGft); ++i) {
    const Variant v = static_cast<Variant>(i);
    if (name == variant_name(v)) return v;
  }
  return std::nullopt;
}

bool CoeffBlock::operator==(const CoeffBlock& o) const {
  if (rows != o.rows) return false;
  if (raw.rows() != o.raw.rows() || raw.cols() != o.raw.cols()) return false;
  return raw.size() == 0 || raw.cwiseEqual(o.raw).all();
}

bool AxisPayload::operator==(const AxisPayload& o) const {
  if (dict_first != o.dict_first || dict_diffs != o.dict_diffs || coeffs != o.coeffs ||
      means != o.means || means_raw != o.means_raw) {
    return false;
  }
  if (dict_raw.size() != o.dict_raw.size()) return false;
  for (size_t i = 0; i < dict_raw.size(); ++i) {
    if (dict_raw[i].rows() != o.dict_raw[i].rows() ||
        dict_raw[i].cols() != o.dict_raw[i].cols()) {
      return false;
    }
    if (dict_raw[i].size() != 0 && !dict_raw[i].cwiseEqual(o.dict_raw[i]).all()) return false;
  }
  return true;
}

bool CompressedAnimation::operator==(const CompressedAnimation& o) const {
  return version == o.version && variant == o.variant && flags == o.flags && n == o.n &&
         k == o.k && n_b == o.n_b && pad == o.pad && k_l == o.k_l && n_c == o.n_c &&
         anchor_bits == o.anchor_bits && dict_bits == o.dict_bits &&
         diff_bits == o.diff_bits && faces == o.faces && axes == o.axes &&
         anchor_indices == o.anchor_indices && anchors == o.anchors;
}

std::vector<uint8_t> serialize(const CompressedAnimation& c, SectionSizes* sizes) {
  std::vector<uint8_t> out;
  ByteWriter w(out);
  SectionSizes s;

  for (char ch : kMagic) w.u8(static_cast<uint8_t>(ch));
  w.u16(c.version);
  w.u8(static_cast<uint8_t>(c.variant));
  w.u8(c.flags);
  w.u32(c.n);
  w.u32(c.k);
  w.u16(c.n_b);
  w.u16(c.pad);
  w.u32(c.k_l);
  w.u32(c.n_c);
  w.u8(c.anchor_bits);
  w.u8(c.dict_bits);
  w.u8(c.diff_bits);
  w.u8(0);
  s.header = w.size();

  w.u32(static_cast<uint32_t>(c.faces.size()));
  for (const Face& f : c.faces) {
    w.u32(f[0]);
    w.u32(f[1]);
    w.u32(f[2]);
  }
  s.connectivity = w.size() - s.header;

  const size_t width = c.coeff_width();
  for (const AxisPayload& axis : c.axes) {
    if (c.variant != Variant::PerMeshGft) {
      if (c.raw_payload()) {
        size_t start = w.size();
        for (const Eigen::MatrixXd& m : axis.dict_raw) {
          for (Eigen::Index j = 0; j < m.cols(); ++j) {
            for (Eigen::Index i = 0; i < m.rows(); ++i) w.f64(m(i, j));
          }
        }
        s.dict_payload += w.size() - start;
      } else {
        size_t start = w.size();
        BitWriter bits;
        for (uint32_t v : axis.dict_first) bits.put(v, c.dict_bits);
        w.bytes(bits.take());
        s.dict_payload += w.size() - start;
        for (const DictDiff& diff : axis.dict_diffs) {
          start = w.size();
          w.f32(diff.min);
          w.f32(diff.max);
          s.dict_ranges += w.size() - start;
          start = w.size();
          BitWriter diff_bits;
          for (uint32_t v : diff.q) diff_bits.put(v, c.diff_bits);
          w.bytes(diff_bits.take());
          s.dict_payload += w.size() - start;
        }
      }
    }
    for (const CoeffBlock& block : axis.coeffs) {
      if (c.raw_payload()) {
        size_t start = w.size();
        for (Eigen::Index i = 0; i < block.raw.rows(); ++i) {
          for (Eigen::Index j = 0; j < block.raw.cols(); ++j) w.f64(block.raw(i, j));
        }
        s.coeff_payload += w.size() - start;
      } else {
        size_t start = w.size();
        for (const QuantRow& row : block.rows) {
          w.f32(row.min);
          w.f32(row.max);
          w.u8(row.bits);
        }
        s.coeff_headers += w.size() - start;
        start = w.size();
        BitWriter packed;
        for (const QuantRow& row : block.rows) {
          for (uint32_t v : row.q) packed.put(v, row.bits);
        }
        w.bytes(packed.take());
        s.coeff_payload += w.size() - start;
      }
    }
    if (variant_uses_means(c.variant)) {
      size_t start = w.size();
      if (c.raw_payload()) {
        for (double m : axis.means_raw) w.f64(m);
      } else {
        for (float m : axis.means) w.f32(m);
      }
      s.means += w.size() - start;
    }
  }

  if (variant_uses_anchors(c.variant)) {
    size_t start = w.size();
    for (uint32_t idx : c.anchor_indices) w.u32(idx);
    s.anchor_indices = w.size() - start;
    for (const AnchorAxis& axis : c.anchors) {
      if (c.raw_payload()) {
        start = w.size();
        for (double v : axis.raw) w.f64(v);
        s.anchor_payload += w.size() - start;
      } else {
        start = w.size();
        w.f32(axis.min);
        w.f32(axis.max);
        s.anchor_ranges += w.size() - start;
        start = w.size();
        BitWriter packed;
        for (uint32_t v : axis.q) packed.put(v, c.anchor_bits);
        w.bytes(packed.take());
        s.anchor_payload += w.size() - start;
      }
    }
  }

  (void)width;
  if (sizes) *sizes = s;
  return out;
}

CompressedAnimation parse(const uint8_t* data, size_t size, SectionSizes* sizes) {
  ByteReader r(data, size);
  SectionSizes s;
  CompressedAnimation c;

  for (char expected : kMagic) {
    if (static_cast<char>(r.u8()) != expected) throw CorruptStream("bad magic");
  }
  c.version = r.u16();
  if (c.version != kStreamVersion) {
    throw VersionMismatch("stream version " + std::to_string(c.version) +
                          ", supported version is " + std::to_string(kStreamVersion));
  }
  const uint8_t variant_byte = r.u8();
  require(variant_byte <= static_cast<uint8_t>(Variant::PerMeshGft), "unknown variant");
  c.variant = static_cast<Variant>(variant_byte);
  c.flags = r.u8();
  require((c.flags & ~kKnownFlags) == 0, "unknown flag bits");
  c.n = r.u32();
  c.k = r.u32();
  c.n_b = r.u16();
  c.pad = r.u16();
  c.k_l = r.u32();
  c.n_c = r.u32();
  c.anchor_bits = r.u8();
  c.dict_bits = r.u8();
  c.diff_bits = r.u8();
  r.u8();  // reserved
  require(c.n >= 1 && c.k >= 1, "empty animation");
  require(c.n_b >= 1, "block count must be >= 1");
  require((c.k + c.pad) % c.n_b == 0, "padded frame count not divisible by block count");
  require(c.pad < c.k_f() || (c.pad == 0 && c.n_b == 1), "padding exceeds one block");
  require(c.variant != Variant::PerMeshGft || c.n_b == 1, "per-mesh variant is unblocked");
  const uint32_t max_rows = c.variant == Variant::PerMeshGft ? c.n : c.k_f();
  require(c.k_l <= max_rows, "retained row count exceeds dictionary dimension");
  if (variant_uses_anchors(c.variant)) {
    require(c.n_c >= 1 && c.n_c <= c.n, "anchor count out of range");
    require(c.anchor_bits >= 1 && c.anchor_bits <= 16, "anchor bit depth outside 1..16");
  } else {
    require(c.n_c == 0, "anchor count nonzero for anchor-free variant");
  }
  require(c.dict_bits >= 1 && c.dict_bits <= 16, "dictionary bit depth outside 1..16");
  require(c.diff_bits >= 1 && c.diff_bits <= 16, "difference bit depth outside 1..16");
  s.header = r.position();

  const uint32_t face_count = r.u32();
  require(face_count >= 1, "no faces");
  c.faces.resize(face_count);
  for (Face& f : c.faces) {
    for (int j = 0; j < 3; ++j) {
      f[j] = r.u32();
      require(f[j] < c.n, "face index out of range");
    }
    require(f[0] != f[1] && f[1] != f[2] && f[0] != f[2], "degenerate face");
  }
  s.connectivity = r.position() - s.header;

  const size_t width = c.coeff_width();
  const size_t kf = c.k_f();
  for (AxisPayload& axis : c.axes) {
    if (c.variant != Variant::PerMeshGft) {
      if (c.raw_payload()) {
        size_t start = r.position();
        axis.dict_raw.resize(c.n_b);
        for (Eigen::MatrixXd& m : axis.dict_raw) {
          m.resize(kf, kf);
          for (size_t j = 0; j < kf; ++j) {
            for (size_t i = 0; i < kf; ++i) m(i, j) = r.f64();
          }
        }
        s.dict_payload += r.position() - start;
      } else {
        size_t start = r.position();
        const size_t first_bytes = packed_byte_size(kf * kf, c.dict_bits);
        BitReader first(r.slice(first_bytes), first_bytes);
        axis.dict_first.resize(kf * kf);
        for (uint32_t& v : axis.dict_first) v = first.get(c.dict_bits);
        s.dict_payload += r.position() - start;
        axis.dict_diffs.resize(c.n_b - 1);
        for (DictDiff& diff : axis.dict_diffs) {
          start = r.position();
          diff.min = r.f32();
          diff.max = r.f32();
          require(diff.min <= diff.max, "difference range has min > max");
          s.dict_ranges += r.position() - start;
          start = r.position();
          const size_t diff_bytes = packed_byte_size(kf * kf, c.diff_bits);
          BitReader packed(r.slice(diff_bytes), diff_bytes);
          diff.q.resize(kf * kf);
          for (uint32_t& v : diff.q) v = packed.get(c.diff_bits);
          s.dict_payload += r.position() - start;
        }
      }
    }
    axis.coeffs.resize(c.n_b);
    for (CoeffBlock& block : axis.coeffs) {
      if (c.raw_payload()) {
        size_t start = r.position();
        block.raw.resize(c.k_l, static_cast<Eigen::Index>(width));
        for (uint32_t i = 0; i < c.k_l; ++i) {
          for (size_t j = 0; j < width; ++j) block.raw(i, j) = r.f64();
        }
        s.coeff_payload += r.position() - start;
      } else {
        size_t start = r.position();
        block.rows.resize(c.k_l);
        for (QuantRow& row : block.rows) {
          row.min = r.f32();
          row.max = r.f32();
          row.bits = r.u8();
          require(row.bits >= 1 && row.bits <= 16, "row bit depth outside 1..16");
          require(row.min <= row.max, "row range has min > max");
        }
        s.coeff_headers += r.position() - start;
        start = r.position();
        const size_t payload = coeff_payload_bytes(block, width);
        BitReader packed(r.slice(payload), payload);
        for (QuantRow& row : block.rows) {
          if (row.min == row.max) continue;
          row.q.resize(width);
          for (uint32_t& v : row.q) v = packed.get(row.bits);
        }
        s.coeff_payload += r.position() - start;
      }
    }
    if (variant_uses_means(c.variant)) {
      size_t start = r.position();
      if (c.raw_payload()) {
        axis.means_raw.resize(c.k);
        for (double& m : axis.means_raw) m = r.f64();
      } else {
        axis.means.resize(c.k);
        for (float& m : axis.means) m = r.f32();
      }
      s.means += r.position() - start;
    }
  }

  if (variant_uses_anchors(c.variant)) {
    size_t start = r.position();
    c.anchor_indices.resize(c.n_c);
    uint32_t prev = 0;
    for (size_t i = 0; i < c.anchor_indices.size(); ++i) {
      c.anchor_indices[i] = r.u32();
      require(c.anchor_indices[i] < c.n, "anchor index out of range");
      require(i == 0 || c.anchor_indices[i] > prev, "anchor indices not strictly increasing");
      prev = c.anchor_indices[i];
    }
    s.anchor_indices = r.position() - start;
    const size_t values = static_cast<size_t>(c.n_c) * c.k;
    for (AnchorAxis& axis : c.anchors) {
      if (c.raw_payload()) {
        start = r.position();
        axis.raw.resize(values);
        for (double& v : axis.raw) v = r.f64();
        s.anchor_payload += r.position() - start;
      } else {
        start = r.position();
        axis.min = r.f32();
        axis.max = r.f32();
        require(axis.min <= axis.max, "anchor range has min > max");
        s.anchor_ranges += r.position() - start;
        start = r.position();
        const size_t payload = packed_byte_size(values, c.anchor_bits);
        BitReader packed(r.slice(payload), payload);
        axis.q.resize(values);
        for (uint32_t& v : axis.q) v = packed.get(c.anchor_bits);
        s.anchor_payload += r.position() - start;
      }
    }
  }

  require(r.remaining() == 0, "trailing bytes after stream end");
  if (sizes) *sizes = s;
  return c;
}

CompressedAnimation parse(const std::vector<uint8_t>& bytes, SectionSizes* sizes) {
  return parse(bytes.data(), bytes.size(), sizes);
}

}  // namespace dmc
