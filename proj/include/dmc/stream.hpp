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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dmc/mesh.hpp"

namespace dmc {

// Compressed animation container and its little-endian wire format.
//
//   magic "DMC1" | version u16 | variant u8 | flags u8
//   n u32 | k u32 | n_b u16 | pad u16 | k_l u32 | n_c u32
//   anchor_bits u8 | dict_bits u8 | diff_bits u8 | reserved u8
//   connectivity: face count u32, then u32 triples
//   per-axis sections in x,y,z order:
//     dictionary payload
//       per_mesh_gft: empty (the decoder rebuilds the spatial basis from
//       the transmitted connectivity)
//       raw flag set: n_b blocks of k_f*k_f f64, column-major
//       otherwise: block 1 packed at dict_bits over the implicit range
//       [-1, 1]; each later block as min f32, max f32, then the packed
//       difference against the decoded predecessor at diff_bits
//     coefficients, one section per block:
//       raw flag set: k_l rows of `width` f64
//       otherwise: k_l headers (min f32, max f32, bits u8), then the rows
//       packed contiguously, MSB-first, zero-padded to a byte boundary at
//       the end of the section. A row with min == max contributes no bits.
//       width is n, except per_mesh_gft where rows hold per-frame values
//       and width is k.
//     per-frame means, f32 x k (f64 when raw): variants pca, pca_q and
//     per_mesh_gft only
//   anchor section (variants pca_qs, pca_qp, blocks):
//     indices u32 x n_c (strictly increasing), then per axis either
//     n_c*k f64 (raw) or min f32, max f32 and packed n_c*k values at
//     anchor_bits, anchor-major (all frames of one anchor, then the next).
//
// Every field required for decoding is in the stream; parse() re-derives
// nothing from the encoder configuration.

enum class Variant : uint8_t {
  Pca = 0,
  PcaQ = 1,
  V2v = 2,
  PcaQs = 3,
  PcaQp = 4,
  Blocks = 5,
  PerMeshGft = 6,
};

constexpr uint16_t kStreamVersion = 1;
constexpr uint8_t kFlagRawPayload = 0x01;        // f64 payloads, quantization bypassed
constexpr uint8_t kFlagNormalizedLaplacian = 0x02;

const char* variant_name(Variant v);
std::optional<Variant> variant_from_name(const std::string& name);

inline bool variant_uses_anchors(Variant v) {
  return v == Variant::PcaQs || v == Variant::PcaQp || v == Variant::Blocks;
}
inline bool variant_uses_means(Variant v) {
  return v == Variant::Pca || v == Variant::PcaQ || v == Variant::PerMeshGft;
}
// v2v codes vertex trajectories; everything else codes differential ones.
inline bool variant_uses_delta(Variant v) { return v != Variant::V2v; }

struct QuantRow {
  float min = 0.0f;
  float max = 0.0f;
  uint8_t bits = 0;
  std::vector<uint32_t> q;  // empty when min == max

  bool operator==(const QuantRow&) const = default;
};

struct CoeffBlock {
  std::vector<QuantRow> rows;  // quantized path, k_l entries
  Eigen::MatrixXd raw;         // raw path, k_l x width

  bool operator==(const CoeffBlock& o) const;
};

struct DictDiff {
  float min = 0.0f;
  float max = 0.0f;
  std::vector<uint32_t> q;

  bool operator==(const DictDiff&) const = default;
};

struct AxisPayload {
  std::vector<uint32_t> dict_first;       // k_f*k_f levels at dict_bits
  std::vector<DictDiff> dict_diffs;       // blocks 2..n_b
  std::vector<Eigen::MatrixXd> dict_raw;  // raw path, n_b matrices
  std::vector<CoeffBlock> coeffs;         // n_b entries
  std::vector<float> means;               // k entries
  std::vector<double> means_raw;          // raw path

  bool operator==(const AxisPayload& o) const;
};

struct AnchorAxis {
  float min = 0.0f;
  float max = 0.0f;
  std::vector<uint32_t> q;  // n_c*k levels, anchor-major
  std::vector<double> raw;  // raw path

  bool operator==(const AnchorAxis&) const = default;
};

struct CompressedAnimation {
  uint16_t version = kStreamVersion;
  Variant variant = Variant::Pca;
  uint8_t flags = 0;
  uint32_t n = 0;
  uint32_t k = 0;
  uint16_t n_b = 1;
  uint16_t pad = 0;  // frames appended so n_b divides the padded count
  uint32_t k_l = 0;
  uint32_t n_c = 0;
  uint8_t anchor_bits = 16;
  uint8_t dict_bits = 16;
  uint8_t diff_bits = 8;
  std::vector<Face> faces;
  std::array<AxisPayload, 3> axes;
  std::vector<uint32_t> anchor_indices;
  std::array<AnchorAxis, 3> anchors;

  uint32_t k_padded() const { return k + pad; }
  uint32_t k_f() const { return k_padded() / n_b; }
  uint32_t coeff_width() const { return variant == Variant::PerMeshGft ? k : n; }
  bool raw_payload() const { return (flags & kFlagRawPayload) != 0; }
  bool normalized_laplacian() const { return (flags & kFlagNormalizedLaplacian) != 0; }

  bool operator==(const CompressedAnimation& o) const;
};

/// Byte extents of each stream section, filled by serialize() and parse().
/// The fields partition the stream: their sum equals the byte size.
struct SectionSizes {
  size_t header = 0;
  size_t connectivity = 0;
  size_t dict_payload = 0;
  size_t dict_ranges = 0;
  size_t coeff_headers = 0;
  size_t coeff_payload = 0;
  size_t means = 0;
  size_t anchor_indices = 0;
  size_t anchor_ranges = 0;
  size_t anchor_payload = 0;

  size_t total() const {
    return header + connectivity + dict_payload + dict_ranges + coeff_headers +
           coeff_payload + means + anchor_indices + anchor_ranges + anchor_payload;
  }
};

std::vector<uint8_t> serialize(const CompressedAnimation& c, SectionSizes* sizes = nullptr);

// Strict parser: throws CorruptStream on any truncation, bound violation or
// trailing garbage, VersionMismatch on an unsupported version.
CompressedAnimation parse(const uint8_t* data, size_t size, SectionSizes* sizes = nullptr);
CompressedAnimation parse(const std::vector<uint8_t>& bytes, SectionSizes* sizes = nullptr);

}  // namespace dmc
