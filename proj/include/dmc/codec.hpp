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

#include <optional>
#include <vector>

#include "dmc/laplacian.hpp"
#include "dmc/mesh.hpp"
#include "dmc/solver.hpp"
#include "dmc/spectral.hpp"
#include "dmc/stream.hpp"

namespace dmc {

enum class AnchorStrategy : uint8_t { Stride = 0, SeededRandom = 1 };

struct EncoderConfig {
  Variant variant = Variant::PcaQp;
  uint32_t k_l = 20;
  std::vector<int> row_bits;  // one entry per retained row; empty = all 16
  uint16_t n_b = 1;           // > 1 requires variant blocks
  int t_max = 4;
  double anchor_fraction = 0.01;
  int anchor_bits = 16;
  int dict_bits = 16;
  int diff_bits = 8;
  AnchorStrategy anchor_strategy = AnchorStrategy::Stride;
  uint64_t seed = 0;
  LaplacianKind laplacian = LaplacianKind::Combinatorial;
  // Debug mode: payloads stored as f64 with quantization bypassed, for
  // isolating truncation error from quantization error.
  bool raw_payload = false;
  // Optional early stop for the block-dictionary iterations: finish when
  // the largest per-column angle moved less than this between rounds.
  std::optional<double> oi_tolerance;
};

// max(1, round(fraction * n)) — the usual "1% of the vertices" rule.
uint32_t anchor_count(uint32_t n, double fraction);

// Stride picks floor(j*n/n_c), deduplicated and topped up with the
// smallest unused indices; SeededRandom is a deterministic shuffle prefix.
// Both return sorted indices.
std::vector<uint32_t> select_anchors(uint32_t n, uint32_t n_c, AnchorStrategy strategy,
                                     uint64_t seed);

// Keeps the first k_l rows of a coefficient matrix, each uniformly
// quantized over its own [min, max] at row_bits[i] bits. Rows at or beyond
// k_l decode as zero.
CoeffBlock quantize_rows(const Eigen::MatrixXd& coeffs, uint32_t k_l,
                         const std::vector<int>& row_bits);

// Rebuilds a full m-row coefficient matrix: retained rows at bin centers,
// dropped rows exactly zero. Throws CorruptPayload on out-of-range levels.
Eigen::MatrixXd dequantize_rows(const CoeffBlock& block, uint32_t m, uint32_t width);

struct DictionaryPayload {
  std::vector<uint32_t> first;       // block 1 at dict_bits over [-1, 1]
  std::vector<DictDiff> diffs;       // later blocks at diff_bits
  std::vector<Eigen::MatrixXd> decoded;  // decoder-side replicas U~[i]
};

// Difference-codes a block dictionary sequence. Block 1 is quantized over
// [-1, 1]; every later block stores U[i] - U~[i-1] against the *decoded*
// predecessor, so quantization error does not accumulate. Inputs must be
// sign-aligned; a diff column longer than sqrt(2) indicates a missed flip
// and is either repaired (auto_realign) or reported as SignMisalignment.
DictionaryPayload encode_dictionaries(const std::vector<Eigen::MatrixXd>& dicts,
                                      int dict_bits, int diff_bits,
                                      bool auto_realign = true);

// Closed-loop reconstruction of the dictionaries from a parsed stream.
std::vector<Eigen::MatrixXd> decode_dictionaries(const AxisPayload& axis, uint32_t k_f,
                                                 uint16_t n_b, int dict_bits, int diff_bits,
                                                 bool raw);

CompressedAnimation encode(const MeshSequence& s, const EncoderConfig& cfg);
MeshSequence decode(const CompressedAnimation& c);

}  // namespace dmc
