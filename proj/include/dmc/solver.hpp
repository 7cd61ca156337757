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

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "dmc/laplacian.hpp"

namespace dmc {

enum class SolveMode {
  Serial,    // factor the normal-equations matrix once per frame
  Parallel,  // factor once, back-substitute every frame column
};

// Least-squares solution of the stacked system
//   [ L ]       [ delta  ]
//   [ S ] X  =  [ anchors ]
// per frame column, where S selects the anchor rows of the identity.
// delta is n x k, anchor_values is n_c x k (rows follow anchor_indices,
// which must be sorted). Solved via the sparse normal equations
// (L^T L + S^T S) with one step of residual refinement. Both modes return
// the same values; Serial redoes the factorization per column and exists
// as the slow reference path.
Eigen::MatrixXd solve_anchored(const SparseMatrix& laplacian, const Eigen::MatrixXd& delta,
                               const std::vector<uint32_t>& anchor_indices,
                               const Eigen::MatrixXd& anchor_values,
                               SolveMode mode = SolveMode::Parallel);

// min ||L X - delta||_F with the vertex mean of column f pinned to
// means(f). The Laplacian annihilates constants, so the constrained
// optimum is a least-squares solution shifted to the requested mean; the
// solve eliminates one vertex to make the normal equations full rank.
Eigen::MatrixXd solve_mean_constrained(const SparseMatrix& laplacian,
                                       const Eigen::MatrixXd& delta,
                                       const Eigen::VectorXd& means);

}  // namespace dmc
