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

#include "dmc/metrics.hpp"

#include <cmath>

namespace dmc {

namespace {

void require_comparable(const MeshSequence& orig, const MeshSequence& recon) {
  if (orig.n() != recon.n() || orig.k() != recon.k()) {
    throw DimensionMismatch("sequences differ in vertex or frame count");
  }
}

}  // namespace

RateReport rate_paper_formula(double n, double k, double n_b, double k_f, double n_c,
                              double bits, double bits_a, double bits_d) {
  if (n <= 0 || k <= 0 || n_b <= 0 || k_f <= 0) {
    throw ConfigError("rate formula needs positive dimensions");
  }
  RateReport r;
  r.mode = RateMode::PaperFormula;
  r.q = bits * n * k / (n * k);
  r.q_a = bits_a * n_c * k / (n * k);
  r.q_d = bits_d * n_b * n_b * k_f * k_f / (n * k);
  r.auxiliary = 0.0;
  r.q_s = r.q + r.q_a + r.q_d;
  return r;
}

RateReport rate_exact(const SectionSizes& sizes, uint32_t n, uint32_t k) {
  const double total_values = static_cast<double>(n) * k;
  RateReport r;
  r.mode = RateMode::ExactBits;
  r.q = 8.0 * sizes.coeff_payload / total_values;
  r.q_a = 8.0 * (sizes.anchor_indices + sizes.anchor_payload) / total_values;
  r.q_d = 8.0 * sizes.dict_payload / total_values;
  r.auxiliary = 8.0 *
                (sizes.header + sizes.connectivity + sizes.dict_ranges + sizes.coeff_headers +
                 sizes.means + sizes.anchor_ranges) /
                total_values;
  r.q_s = r.q + r.q_a + r.q_d + r.auxiliary;
  return r;
}

RateReport rate_exact(const CompressedAnimation& c) {
  SectionSizes sizes;
  serialize(c, &sizes);
  return rate_exact(sizes, c.n, c.k);
}

std::vector<double> frame_rms(const MeshSequence& orig, const MeshSequence& recon) {
  require_comparable(orig, recon);
  std::vector<double> out(orig.k());
  for (int f = 0; f < orig.k(); ++f) {
    double sum = 0.0;
    for (int a = 0; a < 3; ++a) {
      sum += (orig.axis(static_cast<Axis>(a)).row(f) - recon.axis(static_cast<Axis>(a)).row(f))
                 .squaredNorm();
    }
    out[f] = std::sqrt(sum / orig.n());
  }
  return out;
}

std::vector<double> nmsve(const MeshSequence& orig, const MeshSequence& recon,
                          const SparseMatrix& mean_difference) {
  require_comparable(orig, recon);
  if (mean_difference.rows() != orig.n()) {
    throw DimensionMismatch("Laplacian dimension does not match sequence");
  }
  std::vector<double> out(orig.k());
  for (int f = 0; f < orig.k(); ++f) {
    Eigen::MatrixXd diff(orig.n(), 3);
    for (int a = 0; a < 3; ++a) {
      diff.col(a) = (orig.axis(static_cast<Axis>(a)).row(f) -
                     recon.axis(static_cast<Axis>(a)).row(f))
                        .transpose();
    }
    const Eigen::MatrixXd geometric = mean_difference * diff;
    out[f] = (diff.rowwise().norm().sum() + geometric.rowwise().norm().sum()) /
             (2.0 * orig.n());
  }
  return out;
}

DistortionReport distortion_report(const MeshSequence& orig, const MeshSequence& recon) {
  require_comparable(orig, recon);
  if (orig.faces() != recon.faces()) {
    throw ConnectivityMismatch("sequences do not share connectivity");
  }
  DistortionReport report;
  report.rms = frame_rms(orig, recon);
  const SparseMatrix gl =
      build_laplacian(build_connectivity(orig.faces(), orig.n()), LaplacianKind::Normalized);
  report.nmsve = nmsve(orig, recon, gl);
  for (double v : report.rms) report.rms_mean += v;
  report.rms_mean /= report.rms.size();
  for (double v : report.nmsve) report.nmsve_mean += v;
  report.nmsve_mean /= report.nmsve.size();

  report.vertex_mean_error = Eigen::VectorXd::Zero(orig.n());
  for (int f = 0; f < orig.k(); ++f) {
    Eigen::MatrixXd diff(orig.n(), 3);
    for (int a = 0; a < 3; ++a) {
      diff.col(a) = (orig.axis(static_cast<Axis>(a)).row(f) -
                     recon.axis(static_cast<Axis>(a)).row(f))
                        .transpose();
    }
    report.vertex_mean_error += diff.rowwise().norm();
  }
  report.vertex_mean_error /= orig.k();
  return report;
}

}  // namespace dmc
