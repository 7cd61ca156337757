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

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "dmc/mesh.hpp"

namespace dmc {

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class LaplacianKind : uint8_t {
  Combinatorial = 0,  // degree on the diagonal, -1 per neighbor
  Normalized = 1,     // rows scaled by 1/degree: 1 on the diagonal, -1/d_i per neighbor
};

// Graph Laplacian of the one-ring adjacency. The combinatorial form is
// integer-valued and has exactly zero row sums; the normalized form is the
// per-vertex mean-difference operator.
SparseMatrix build_laplacian(const Connectivity& c,
                             LaplacianKind kind = LaplacianKind::Combinatorial);

// Differential coordinates of a k-by-n trajectory matrix: L * A^T (n-by-k).
Eigen::MatrixXd delta_coordinates(const SparseMatrix& laplacian, const Eigen::MatrixXd& a);

}  // namespace dmc
