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

#include <Eigen/Dense>

#include "dmc/errors.hpp"

namespace dmc {

/// Orthonormal temporal coding basis. Columns are ordered by descending
/// eigenvalue and carry a canonical sign: the largest-magnitude entry of
/// each column is non-negative, so repeated runs produce identical bases
/// (and identical bitstreams) despite eigenvector sign ambiguity.
struct TrajectoryDictionary {
  Eigen::MatrixXd u;            // m x m orthonormal
  Eigen::VectorXd eigenvalues;  // descending; empty when unknown (iterative path)

  int dim() const { return static_cast<int>(u.rows()); }
};

// A * A^T, symmetrized to remove round-off asymmetry.
Eigen::MatrixXd autocorrelation(const Eigen::MatrixXd& a);

// Full eigenbasis of a symmetric PSD matrix, eigenvalue-descending with
// canonical column signs. Throws ConvergenceFailure if the decomposition
// does not converge.
TrajectoryDictionary full_eigenbasis(const Eigen::MatrixXd& r);

// Dominant-subspace tracking: starting from an orthonormal warm start,
// repeat U <- orthonormal_factor(QR(R * U)) for t_max - 1 rounds, then
// apply canonical signs. A numerically zero column in the QR factor raises
// RankDeficiency; callers with a direct decomposition available can fall
// back to it. When stop_tolerance is set, the loop ends early once the
// largest per-column angle moved less than the tolerance in one round.
TrajectoryDictionary orthogonal_iterations(const Eigen::MatrixXd& r,
                                           const TrajectoryDictionary& u_init, int t_max,
                                           std::optional<double> stop_tolerance = {});

// Coefficients of the rows of `signal` (m x n) in the basis: U^T * signal.
Eigen::MatrixXd gft_project(const TrajectoryDictionary& u, const Eigen::MatrixXd& signal);

// Inverse of gft_project for a full orthonormal basis: U * coeffs.
Eigen::MatrixXd gft_unproject(const TrajectoryDictionary& u, const Eigen::MatrixXd& coeffs);

// Flips each column of `cur` whose inner product with the matching column
// of `prev` is negative. Output spans the same subspace; used so that
// consecutive block dictionaries difference-code into small residuals.
TrajectoryDictionary align_signs(const Eigen::MatrixXd& prev, const TrajectoryDictionary& cur);

// Largest principal angle (radians, in [0, pi/2]) between the column
// spaces of two orthonormal m x p matrices.
double subspace_angle(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v);

// Canonical sign normalization, exposed for reuse by the iterative path.
void canonicalize_signs(Eigen::MatrixXd& u);

}  // namespace dmc
