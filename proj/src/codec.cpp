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

#include "dmc/codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "dmc/quantize.hpp"

namespace dmc {

namespace {

// The stream stores float ranges. Widen the rounded bounds so every input
// value stays inside the quantizer interval.
std::pair<float, float> widened_range(double lo, double hi) {
  float flo = static_cast<float>(lo);
  if (static_cast<double>(flo) > lo) {
    flo = std::nextafter(flo, -std::numeric_limits<float>::infinity());
  }
  float fhi = static_cast<float>(hi);
  if (static_cast<double>(fhi) < hi) {
    fhi = std::nextafter(fhi, std::numeric_limits<float>::infinity());
  }
  return {flo, fhi};
}

Eigen::MatrixXd pad_frames(const Eigen::MatrixXd& a, uint32_t pad) {
  if (pad == 0) return a;
  Eigen::MatrixXd padded(a.rows() + pad, a.cols());
  padded.topRows(a.rows()) = a;
  for (uint32_t p = 0; p < pad; ++p) padded.row(a.rows() + p) = a.row(a.rows() - 1);
  return padded;
}

// Spatial graph-frequency basis, lowest frequencies first. Both sides of
// the codec derive it from the transmitted connectivity.
Eigen::MatrixXd spatial_eigenbasis(const SparseMatrix& laplacian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(laplacian));
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("spatial eigendecomposition did not converge");
  }
  Eigen::MatrixXd phi = solver.eigenvectors();
  canonicalize_signs(phi);
  return phi;
}

struct CheckedConfig {
  uint16_t pad = 0;
  uint32_t k_f = 0;
  std::vector<int> row_bits;
};

CheckedConfig check_config(const EncoderConfig& cfg, uint32_t n, uint32_t k) {
  if (cfg.n_b < 1) throw ConfigError("block count must be >= 1");
  if (cfg.variant != Variant::Blocks && cfg.n_b != 1) {
    throw ConfigError("block count > 1 requires the blocks variant");
  }
  if (cfg.n_b > k) {
    throw BlockSizeError("cannot split " + std::to_string(k) + " frames into " +
                         std::to_string(cfg.n_b) + " blocks");
  }
  if (cfg.t_max < 1) throw ConfigError("t_max must be >= 1");
  if (cfg.anchor_fraction < 0.0 || cfg.anchor_fraction > 1.0) {
    throw ConfigError("anchor fraction outside [0, 1]");
  }
  for (int bits : {cfg.anchor_bits, cfg.dict_bits, cfg.diff_bits}) {
    if (bits < 1 || bits > 16) {
      throw InvalidBits("bit depth " + std::to_string(bits) + " outside 1..16");
    }
  }

  CheckedConfig out;
  out.pad = static_cast<uint16_t>((cfg.n_b - k % cfg.n_b) % cfg.n_b);
  out.k_f = (k + out.pad) / cfg.n_b;

  if (cfg.variant == Variant::PerMeshGft) {
    if (n > 5000) {
      throw ConfigError("per_mesh_gft needs a dense n x n eigendecomposition; "
                        "limited to n <= 5000, got n = " + std::to_string(n));
    }
    if (cfg.laplacian != LaplacianKind::Combinatorial) {
      throw ConfigError("per_mesh_gft requires the combinatorial Laplacian");
    }
    if (cfg.k_l > n) throw ConfigError("k_l exceeds vertex count for per_mesh_gft");
  } else if (cfg.k_l > out.k_f) {
    throw ConfigError("k_l = " + std::to_string(cfg.k_l) + " exceeds dictionary dimension " +
                      std::to_string(out.k_f));
  }

  if (cfg.row_bits.empty()) {
    out.row_bits.assign(cfg.k_l, 16);
  } else {
    if (cfg.row_bits.size() != cfg.k_l) {
      throw ConfigError("row_bits must have one entry per retained row");
    }
    out.row_bits = cfg.row_bits;
  }
  for (int bits : out.row_bits) {
    if (bits < 1 || bits > 16) {
      throw InvalidBits("row bit depth " + std::to_string(bits) + " outside 1..16");
    }
  }
  return out;
}

std::vector<uint32_t> pack_matrix(const Eigen::MatrixXd& m, const UniformQuantizer& q) {
  std::vector<uint32_t> out;
  out.reserve(static_cast<size_t>(m.size()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(q.quantize(m(i, j)));
  }
  return out;
}

Eigen::MatrixXd unpack_matrix(const std::vector<uint32_t>& levels, Eigen::Index rows,
                              Eigen::Index cols, const UniformQuantizer& q) {
  if (levels.size() != static_cast<size_t>(rows * cols)) {
    throw CorruptPayload("dictionary payload has wrong element count");
  }
  Eigen::MatrixXd out(rows, cols);
  size_t idx = 0;
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = q.dequantize(levels[idx++]);
  }
  return out;
}

// Per-block trajectory dictionaries per Algorithm: direct decomposition for
// the first block, warm-started orthogonal iterations afterwards. A block
// whose data is too degenerate for the iteration falls back to the direct
// path; either way the result is sign-aligned to its predecessor so the
// difference coder sees small residuals.
std::vector<Eigen::MatrixXd> block_dictionaries(const Eigen::MatrixXd& a_padded, uint16_t n_b,
                                                uint32_t k_f, const EncoderConfig& cfg) {
  std::vector<Eigen::MatrixXd> dicts;
  dicts.reserve(n_b);
  TrajectoryDictionary prev;
  for (uint16_t b = 0; b < n_b; ++b) {
    const Eigen::MatrixXd block = a_padded.middleRows(static_cast<Eigen::Index>(b) * k_f, k_f);
    const Eigen::MatrixXd r = autocorrelation(block);
    TrajectoryDictionary cur;
    if (b == 0) {
      cur = full_eigenbasis(r);
    } else {
      try {
        cur = orthogonal_iterations(r, prev, cfg.t_max, cfg.oi_tolerance);
      } catch (const RankDeficiency&) {
        cur = full_eigenbasis(r);
      }
      cur = align_signs(prev.u, cur);
    }
    dicts.push_back(cur.u);
    prev = std::move(cur);
  }
  return dicts;
}

Eigen::MatrixXd anchor_matrix(const AnchorAxis& axis, const std::vector<uint32_t>& indices,
                              uint32_t k, int anchor_bits, bool raw) {
  const Eigen::Index n_c = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXd values(n_c, k);
  if (raw) {
    if (axis.raw.size() != static_cast<size_t>(n_c) * k) {
      throw CorruptPayload("anchor payload has wrong element count");
    }
    for (Eigen::Index a = 0; a < n_c; ++a) {
      for (uint32_t f = 0; f < k; ++f) values(a, f) = axis.raw[a * k + f];
    }
    return values;
  }
  if (axis.q.size() != static_cast<size_t>(n_c) * k) {
    throw CorruptPayload("anchor payload has wrong element count");
  }
  const UniformQuantizer q(axis.min, axis.max, anchor_bits);
  for (Eigen::Index a = 0; a < n_c; ++a) {
    for (uint32_t f = 0; f < k; ++f) values(a, f) = q.dequantize(axis.q[a * k + f]);
  }
  return values;
}

}  // namespace

uint32_t anchor_count(uint32_t n, double fraction) {
  const auto rounded = static_cast<int64_t>(std::llround(fraction * n));
  return static_cast<uint32_t>(std::clamp<int64_t>(rounded, 1, n));
}

std::vector<uint32_t> select_anchors(uint32_t n, uint32_t n_c, AnchorStrategy strategy,
                                     uint64_t seed) {
  if (n_c < 1 || n_c > n) {
    throw InvalidCount("anchor count " + std::to_string(n_c) + " outside 1.." +
                       std::to_string(n));
  }
  std::vector<uint32_t> indices;
  indices.reserve(n_c);
  if (strategy == AnchorStrategy::Stride) {
    for (uint64_t j = 0; j < n_c; ++j) {
      indices.push_back(static_cast<uint32_t>(j * n / n_c));
    }
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    // Top up after deduplication with the smallest unused indices.
    std::vector<char> used(n, 0);
    for (uint32_t idx : indices) used[idx] = 1;
    for (uint32_t i = 0; indices.size() < n_c && i < n; ++i) {
      if (!used[i]) {
        indices.push_back(i);
        used[i] = 1;
      }
    }
    std::sort(indices.begin(), indices.end());
  } else {
    // Fisher-Yates with an explicit modulo draw; std::shuffle is not
    // reproducible across standard libraries.
    std::vector<uint32_t> pool(n);
    for (uint32_t i = 0; i < n; ++i) pool[i] = i;
    std::mt19937_64 rng(seed);
    for (uint32_t i = n - 1; i > 0; --i) {
      const uint64_t j = rng() % (static_cast<uint64_t>(i) + 1);
      std::swap(pool[i], pool[j]);
    }
    indices.assign(pool.begin(), pool.begin() + n_c);
    std::sort(indices.begin(), indices.end());
  }
  return indices;
}

CoeffBlock quantize_rows(const Eigen::MatrixXd& coeffs, uint32_t k_l,
                         const std::vector<int>& row_bits) {
  if (k_l > coeffs.rows()) {
    throw DimensionMismatch("k_l exceeds coefficient row count");
  }
  if (row_bits.size() != k_l) throw ConfigError("row_bits must have one entry per row");
  CoeffBlock block;
  block.rows.resize(k_l);
  for (uint32_t r = 0; r < k_l; ++r) {
    const auto [lo, hi] = widened_range(coeffs.row(r).minCoeff(), coeffs.row(r).maxCoeff());
    const UniformQuantizer q(lo, hi, row_bits[r]);
    QuantRow& row = block.rows[r];
    row.min = lo;
    row.max = hi;
    row.bits = static_cast<uint8_t>(row_bits[r]);
    if (!q.degenerate()) {
      row.q.resize(coeffs.cols());
      for (Eigen::Index j = 0; j < coeffs.cols(); ++j) row.q[j] = q.quantize(coeffs(r, j));
    }
  }
  return block;
}

Eigen::MatrixXd dequantize_rows(const CoeffBlock& block, uint32_t m, uint32_t width) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, width);
  if (block.raw.size() != 0) {
    if (block.raw.rows() > m || block.raw.cols() != width) {
      throw DimensionMismatch("raw coefficient block has wrong shape");
    }
    out.topRows(block.raw.rows()) = block.raw;
    return out;
  }
  if (block.rows.size() > m) throw DimensionMismatch("more retained rows than total rows");
  for (size_t r = 0; r < block.rows.size(); ++r) {
    const QuantRow& row = block.rows[r];
    if (row.min == row.max) {
      out.row(r).setConstant(static_cast<double>(row.min));
      continue;
    }
    if (row.q.size() != width) throw CorruptPayload("row payload has wrong element count");
    const UniformQuantizer q(row.min, row.max, row.bits);
    for (uint32_t j = 0; j < width; ++j) out(r, j) = q.dequantize(row.q[j]);
  }
  return out;
}

DictionaryPayload encode_dictionaries(const std::vector<Eigen::MatrixXd>& dicts,
                                      int dict_bits, int diff_bits, bool auto_realign) {
  if (dicts.empty()) throw ConfigError("no dictionaries to encode");
  const Eigen::Index m = dicts[0].rows();
  for (const Eigen::MatrixXd& d : dicts) {
    if (d.rows() != m || d.cols() != m) {
      throw DimensionMismatch("dictionaries differ in dimension");
    }
  }
  DictionaryPayload payload;
  const UniformQuantizer base(-1.0f, 1.0f, dict_bits);
  payload.first = pack_matrix(dicts[0], base);
  payload.decoded.push_back(unpack_matrix(payload.first, m, m, base));

  for (size_t i = 1; i < dicts.size(); ++i) {
    Eigen::MatrixXd cur = dicts[i];
    const Eigen::MatrixXd& prev = payload.decoded.back();
    for (Eigen::Index j = 0; j < m; ++j) {
      const double straight = (cur.col(j) - prev.col(j)).squaredNorm();
      if (straight > 2.0 && (-cur.col(j) - prev.col(j)).squaredNorm() < straight) {
        if (!auto_realign) {
          throw SignMisalignment("dictionary " + std::to_string(i + 1) + " column " +
                                 std::to_string(j) + " is sign-flipped against its predecessor");
        }
        cur.col(j) = -cur.col(j);
      }
    }
    const Eigen::MatrixXd diff = cur - prev;
    const auto [lo, hi] = widened_range(diff.minCoeff(), diff.maxCoeff());
    const UniformQuantizer q(lo, hi, diff_bits);
    DictDiff entry;
    entry.min = lo;
    entry.max = hi;
    entry.q = pack_matrix(diff, q);
    payload.decoded.push_back(prev + unpack_matrix(entry.q, m, m, q));
    payload.diffs.push_back(std::move(entry));
  }
  return payload;
}

std::vector<Eigen::MatrixXd> decode_dictionaries(const AxisPayload& axis, uint32_t k_f,
                                                 uint16_t n_b, int dict_bits, int diff_bits,
                                                 bool raw) {
  if (raw) {
    if (axis.dict_raw.size() != n_b) throw CorruptPayload("wrong raw dictionary count");
    return axis.dict_raw;
  }
  std::vector<Eigen::MatrixXd> out;
  out.reserve(n_b);
  const UniformQuantizer base(-1.0f, 1.0f, dict_bits);
  out.push_back(unpack_matrix(axis.dict_first, k_f, k_f, base));
  if (axis.dict_diffs.size() != static_cast<size_t>(n_b) - 1) {
    throw CorruptPayload("wrong dictionary difference count");
  }
  for (const DictDiff& diff : axis.dict_diffs) {
    const UniformQuantizer q(diff.min, diff.max, diff_bits);
    out.push_back(out.back() + unpack_matrix(diff.q, k_f, k_f, q));
  }
  return out;
}

CompressedAnimation encode(const MeshSequence& s, const EncoderConfig& cfg) {
  const ValidationReport report = validate_sequence(s);
  if (!report.ok()) {
    std::string joined;
    for (const std::string& issue : report.issues) {
      if (!joined.empty()) joined += "; ";
      joined += issue;
    }
    throw ValidationError(joined);
  }
  const uint32_t n = static_cast<uint32_t>(s.n());
  const uint32_t k = static_cast<uint32_t>(s.k());
  const CheckedConfig checked = check_config(cfg, n, k);

  CompressedAnimation c;
  c.variant = cfg.variant;
  c.flags = (cfg.raw_payload ? kFlagRawPayload : 0) |
            (cfg.laplacian == LaplacianKind::Normalized ? kFlagNormalizedLaplacian : 0);
  c.n = n;
  c.k = k;
  c.n_b = cfg.n_b;
  c.pad = checked.pad;
  c.k_l = cfg.k_l;
  c.n_c = variant_uses_anchors(cfg.variant) ? anchor_count(n, cfg.anchor_fraction) : 0;
  c.anchor_bits = static_cast<uint8_t>(cfg.anchor_bits);
  c.dict_bits = static_cast<uint8_t>(cfg.dict_bits);
  c.diff_bits = static_cast<uint8_t>(cfg.diff_bits);
  c.faces = s.faces();

  SparseMatrix laplacian;
  Eigen::MatrixXd phi;
  if (variant_uses_delta(cfg.variant)) {
    laplacian = build_laplacian(build_connectivity(s.faces(), s.n()), cfg.laplacian);
    if (cfg.variant == Variant::PerMeshGft) phi = spatial_eigenbasis(laplacian);
  }

  for (int a = 0; a < 3; ++a) {
    const Eigen::MatrixXd& traj = s.axis(static_cast<Axis>(a));
    AxisPayload& axis = c.axes[a];

    if (cfg.variant == Variant::PerMeshGft) {
      const Eigen::MatrixXd delta = delta_coordinates(laplacian, traj);  // n x k
      const Eigen::MatrixXd coeffs = phi.transpose() * delta;            // n x k
      CoeffBlock block;
      if (cfg.raw_payload) {
        block.raw = coeffs.topRows(cfg.k_l);
      } else {
        block = quantize_rows(coeffs, cfg.k_l, checked.row_bits);
      }
      axis.coeffs.push_back(std::move(block));
    } else {
      const Eigen::MatrixXd padded = pad_frames(traj, checked.pad);
      const std::vector<Eigen::MatrixXd> dicts =
          block_dictionaries(padded, cfg.n_b, checked.k_f, cfg);
      if (cfg.raw_payload) {
        axis.dict_raw = dicts;
      } else {
        DictionaryPayload payload = encode_dictionaries(dicts, cfg.dict_bits, cfg.diff_bits);
        axis.dict_first = std::move(payload.first);
        axis.dict_diffs = std::move(payload.diffs);
      }
      for (uint16_t b = 0; b < cfg.n_b; ++b) {
        const Eigen::MatrixXd block_traj =
            padded.middleRows(static_cast<Eigen::Index>(b) * checked.k_f, checked.k_f);
        Eigen::MatrixXd coeffs;
        if (cfg.variant == Variant::V2v) {
          coeffs = dicts[b].transpose() * block_traj;  // k x n
        } else {
          const Eigen::MatrixXd delta = delta_coordinates(laplacian, block_traj);  // n x k_f
          coeffs = dicts[b].transpose() * delta.transpose();                       // k_f x n
        }
        CoeffBlock block;
        if (cfg.raw_payload) {
          block.raw = coeffs.topRows(cfg.k_l);
        } else {
          block = quantize_rows(coeffs, cfg.k_l, checked.row_bits);
        }
        axis.coeffs.push_back(std::move(block));
      }
    }

    if (variant_uses_means(cfg.variant)) {
      for (uint32_t f = 0; f < k; ++f) {
        const double mean = traj.row(f).mean();
        if (cfg.raw_payload) {
          axis.means_raw.push_back(mean);
        } else {
          axis.means.push_back(static_cast<float>(mean));
        }
      }
    }
  }

  if (variant_uses_anchors(cfg.variant)) {
    c.anchor_indices = select_anchors(n, c.n_c, cfg.anchor_strategy, cfg.seed);
    for (int a = 0; a < 3; ++a) {
      const Eigen::MatrixXd& traj = s.axis(static_cast<Axis>(a));
      AnchorAxis& anchor = c.anchors[a];
      if (cfg.raw_payload) {
        anchor.raw.reserve(static_cast<size_t>(c.n_c) * k);
        for (uint32_t idx : c.anchor_indices) {
          for (uint32_t f = 0; f < k; ++f) anchor.raw.push_back(traj(f, idx));
        }
      } else {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (uint32_t idx : c.anchor_indices) {
          lo = std::min(lo, traj.col(idx).minCoeff());
          hi = std::max(hi, traj.col(idx).maxCoeff());
        }
        const auto [flo, fhi] = widened_range(lo, hi);
        anchor.min = flo;
        anchor.max = fhi;
        const UniformQuantizer q(flo, fhi, cfg.anchor_bits);
        anchor.q.reserve(static_cast<size_t>(c.n_c) * k);
        for (uint32_t idx : c.anchor_indices) {
          for (uint32_t f = 0; f < k; ++f) anchor.q.push_back(q.quantize(traj(f, idx)));
        }
      }
    }
  }
  return c;
}

MeshSequence decode(const CompressedAnimation& c) {
  const Connectivity conn = build_connectivity(c.faces, static_cast<int>(c.n));
  SparseMatrix laplacian;
  Eigen::MatrixXd phi;
  if (variant_uses_delta(c.variant)) {
    laplacian = build_laplacian(conn, c.normalized_laplacian() ? LaplacianKind::Normalized
                                                               : LaplacianKind::Combinatorial);
    if (c.variant == Variant::PerMeshGft) phi = spatial_eigenbasis(laplacian);
  }

  std::array<Eigen::MatrixXd, 3> anchor_values;
  if (variant_uses_anchors(c.variant)) {
    for (int a = 0; a < 3; ++a) {
      Eigen::MatrixXd values =
          anchor_matrix(c.anchors[a], c.anchor_indices, c.k, c.anchor_bits, c.raw_payload());
      if (c.pad > 0) {
        Eigen::MatrixXd padded(values.rows(), c.k_padded());
        padded.leftCols(c.k) = values;
        for (uint16_t p = 0; p < c.pad; ++p) padded.col(c.k + p) = values.col(c.k - 1);
        values = std::move(padded);
      }
      anchor_values[a] = std::move(values);
    }
  }

  std::array<Eigen::MatrixXd, 3> axes;
  for (int a = 0; a < 3; ++a) {
    const AxisPayload& axis = c.axes[a];

    if (c.variant == Variant::PerMeshGft) {
      const Eigen::MatrixXd coeffs = dequantize_rows(axis.coeffs.at(0), c.n, c.k);
      const Eigen::MatrixXd delta = phi * coeffs;  // n x k
      Eigen::VectorXd means(c.k);
      for (uint32_t f = 0; f < c.k; ++f) {
        means(f) = c.raw_payload() ? axis.means_raw.at(f)
                                   : static_cast<double>(axis.means.at(f));
      }
      axes[a] = solve_mean_constrained(laplacian, delta, means).transpose();
      continue;
    }

    const std::vector<Eigen::MatrixXd> dicts =
        decode_dictionaries(axis, c.k_f(), c.n_b, c.dict_bits, c.diff_bits, c.raw_payload());
    if (axis.coeffs.size() != c.n_b) throw CorruptPayload("wrong coefficient block count");

    if (c.variant == Variant::V2v) {
      const Eigen::MatrixXd coeffs = dequantize_rows(axis.coeffs.at(0), c.k, c.n);
      axes[a] = dicts[0] * coeffs;  // k x n
      continue;
    }

    // Differential variants: rebuild delta per block, then one stacked
    // least-squares pass over all (padded) frame columns.
    Eigen::MatrixXd delta(c.n, c.k_padded());
    for (uint16_t b = 0; b < c.n_b; ++b) {
      const Eigen::MatrixXd coeffs = dequantize_rows(axis.coeffs.at(b), c.k_f(), c.n);
      delta.middleCols(static_cast<Eigen::Index>(b) * c.k_f(), c.k_f()) =
          (dicts[b] * coeffs).transpose();
    }

    Eigen::MatrixXd solved;
    if (variant_uses_anchors(c.variant)) {
      const SolveMode mode =
          c.variant == Variant::PcaQs ? SolveMode::Serial : SolveMode::Parallel;
      solved = solve_anchored(laplacian, delta, c.anchor_indices, anchor_values[a], mode);
    } else {
      Eigen::VectorXd means(c.k);
      for (uint32_t f = 0; f < c.k; ++f) {
        means(f) = c.raw_payload() ? axis.means_raw.at(f)
                                   : static_cast<double>(axis.means.at(f));
      }
      solved = solve_mean_constrained(laplacian, delta.leftCols(c.k), means);
    }
    axes[a] = solved.leftCols(c.k).transpose();  // k x n
  }

  return MeshSequence(c.faces, std::move(axes));
}

}  // namespace dmc
