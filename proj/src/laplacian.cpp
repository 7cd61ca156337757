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

#include "dmc/laplacian.hpp"

#include <vector>

namespace dmc {

SparseMatrix build_laplacian(const Connectivity& c, LaplacianKind kind) {
  std::vector<Eigen::Triplet<double>> entries;
  size_t nnz = static_cast<size_t>(c.n);
  for (const auto& list : c.neighbors) nnz += list.size();
  entries.reserve(nnz);
  for (int i = 0; i < c.n; ++i) {
    const double d = static_cast<double>(c.degree(i));
    const double diag = kind == LaplacianKind::Combinatorial ? d : 1.0;
    const double off = kind == LaplacianKind::Combinatorial ? -1.0 : -1.0 / d;
    entries.emplace_back(i, i, diag);
    for (uint32_t j : c.neighbors[i]) entries.emplace_back(i, static_cast<int>(j), off);
  }
  SparseMatrix laplacian(c.n, c.n);
  laplacian.setFromTriplets(entries.begin(), entries.end());
  laplacian.makeCompressed();
  return laplacian;
}

Eigen::MatrixXd delta_coordinates(const SparseMatrix& laplacian, const Eigen::MatrixXd& a) {
  if (a.cols() != laplacian.cols()) {
    throw DimensionMismatch("trajectory matrix has " + std::to_string(a.cols()) +
                            " columns, Laplacian dimension is " +
                            std::to_string(laplacian.cols()));
  }
  return laplacian * a.transpose();
}

}  // namespace dmc
