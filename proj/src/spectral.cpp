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

#include "dmc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dmc {

namespace {

void require_square_match(const Eigen::MatrixXd& r, const Eigen::MatrixXd& u) {
  if (r.rows() != r.cols()) throw DimensionMismatch("autocorrelation matrix must be square");
  if (u.rows() != r.rows() || u.cols() != r.cols()) {
    throw DimensionMismatch("basis dimension does not match matrix dimension");
  }
}

}  // namespace

Eigen::MatrixXd autocorrelation(const Eigen::MatrixXd& a) {
  if (a.rows() < 1 || a.cols() < 1) throw DimensionMismatch("empty trajectory matrix");
  Eigen::MatrixXd r = a * a.transpose();
  return 0.5 * (r + r.transpose());
}

void canonicalize_signs(Eigen::MatrixXd& u) {
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    Eigen::Index imax = 0;
    u.col(j).cwiseAbs().maxCoeff(&imax);
    if (u(imax, j) < 0.0) u.col(j) = -u.col(j);
  }
}

TrajectoryDictionary full_eigenbasis(const Eigen::MatrixXd& r) {
  if (r.rows() != r.cols()) throw DimensionMismatch("autocorrelation matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(r);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("symmetric eigendecomposition did not converge (m=" +
                             std::to_string(r.rows()) + ")");
  }
  const Eigen::Index m = r.rows();
  TrajectoryDictionary dict;
  dict.u.resize(m, m);
  dict.eigenvalues.resize(m);
  // Eigen returns ascending eigenvalues; the dictionary wants descending.
  for (Eigen::Index j = 0; j < m; ++j) {
    dict.u.col(j) = solver.eigenvectors().col(m - 1 - j);
    dict.eigenvalues(j) = solver.eigenvalues()(m - 1 - j);
  }
  canonicalize_signs(dict.u);
  return dict;
}

TrajectoryDictionary orthogonal_iterations(const Eigen::MatrixXd& r,
                                           const TrajectoryDictionary& u_init, int t_max,
                                           std::optional<double> stop_tolerance) {
  require_square_match(r, u_init.u);
  if (t_max < 1) throw ConfigError("t_max must be >= 1");
  const Eigen::Index m = r.rows();
  TrajectoryDictionary out;
  out.u = u_init.u;
  for (int t = 2; t <= t_max; ++t) {
    Eigen::MatrixXd product = r * out.u;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(product);
    const Eigen::VectorXd diag = qr.matrixQR().diagonal().cwiseAbs();
    const double tol =
        static_cast<double>(m) * std::numeric_limits<double>::epsilon() * diag.maxCoeff();
    for (Eigen::Index j = 0; j < m; ++j) {
      if (diag(j) <= tol) {
        throw RankDeficiency("column " + std::to_string(j) +
                             " vanished during orthogonal iteration " + std::to_string(t));
      }
    }
    Eigen::MatrixXd next = qr.householderQ() * Eigen::MatrixXd::Identity(m, m);
    if (stop_tolerance) {
      double moved = 0.0;
      for (Eigen::Index j = 0; j < m; ++j) {
        const double c = std::clamp(std::abs(out.u.col(j).dot(next.col(j))), 0.0, 1.0);
        moved = std::max(moved, std::acos(c));
      }
      out.u = std::move(next);
      if (moved < *stop_tolerance) break;
    } else {
      out.u = std::move(next);
    }
  }
  canonicalize_signs(out.u);
  return out;
}

Eigen::MatrixXd gft_project(const TrajectoryDictionary& u, const Eigen::MatrixXd& signal) {
  if (signal.rows() != u.u.rows()) {
    throw DimensionMismatch("signal has " + std::to_string(signal.rows()) +
                            " rows, basis dimension is " + std::to_string(u.u.rows()));
  }
  return u.u.transpose() * signal;
}

Eigen::MatrixXd gft_unproject(const TrajectoryDictionary& u, const Eigen::MatrixXd& coeffs) {
  if (coeffs.rows() != u.u.cols()) {
    throw DimensionMismatch("coefficient matrix has " + std::to_string(coeffs.rows()) +
                            " rows, basis dimension is " + std::to_string(u.u.cols()));
  }
  return u.u * coeffs;
}

TrajectoryDictionary align_signs(const Eigen::MatrixXd& prev, const TrajectoryDictionary& cur) {
  if (prev.rows() != cur.u.rows() || prev.cols() != cur.u.cols()) {
    throw DimensionMismatch("dictionaries differ in shape");
  }
  TrajectoryDictionary out = cur;
  for (Eigen::Index j = 0; j < out.u.cols(); ++j) {
    if (prev.col(j).dot(out.u.col(j)) < 0.0) out.u.col(j) = -out.u.col(j);
  }
  return out;
}

double subspace_angle(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw DimensionMismatch("subspace bases differ in shape");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(u.transpose() * v);
  const double smin = std::clamp(svd.singularValues().minCoeff(), -1.0, 1.0);
  return std::acos(smin);
}

}  // namespace dmc
