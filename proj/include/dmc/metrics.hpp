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

#include <vector>

#include "dmc/laplacian.hpp"
#include "dmc/mesh.hpp"
#include "dmc/stream.hpp"

namespace dmc {

enum class RateMode { PaperFormula, ExactBits };

/// Bits-per-vertex-per-frame breakdown: q for coefficients, q_a for
/// anchors, q_d for dictionaries, plus (exact mode only) the auxiliary
/// overhead of headers, ranges, means and connectivity. q_s is always the
/// exact sum of the parts.
struct RateReport {
  double q = 0.0;
  double q_a = 0.0;
  double q_d = 0.0;
  double auxiliary = 0.0;
  double q_s = 0.0;
  RateMode mode = RateMode::ExactBits;
};

// Closed-form accounting with the conventional simplifications: one
// dictionary charged per stream, anchors charged at bits_a per vertex per
// frame, and the n_b^2 * k_f^2 dictionary element count kept verbatim.
// `bits` may be fractional (an average over rows). Counts n_c as given,
// which may be fractional too (e.g. exactly 0.01 * n).
RateReport rate_paper_formula(double n, double k, double n_b, double k_f, double n_c,
                              double bits, double bits_a, double bits_d);

// Honest accounting of a real stream: every byte lands in exactly one
// component, so q_s equals 8 * (stream bytes) / (n * k).
RateReport rate_exact(const SectionSizes& sizes, uint32_t n, uint32_t k);
RateReport rate_exact(const CompressedAnimation& c);

// Per-frame root-mean-square vertex distance.
std::vector<double> frame_rms(const MeshSequence& orig, const MeshSequence& recon);

// Per-frame visual error: the average over vertices of the positional
// error norm and the error norm after the mean-difference (degree
// normalized) Laplacian, divided by two. Pass the Normalized kind of
// build_laplacian for `mean_difference`.
std::vector<double> nmsve(const MeshSequence& orig, const MeshSequence& recon,
                          const SparseMatrix& mean_difference);

struct DistortionReport {
  std::vector<double> rms;    // per frame
  std::vector<double> nmsve;  // per frame
  double rms_mean = 0.0;
  double nmsve_mean = 0.0;
  Eigen::VectorXd vertex_mean_error;  // mean positional error per vertex
};

DistortionReport distortion_report(const MeshSequence& orig, const MeshSequence& recon);

}  // namespace dmc
