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

#include "dmc/solver.hpp"

#include <string>

namespace dmc {

namespace {

using Factorization = Eigen::SimplicialLDLT<SparseMatrix>;

SparseMatrix anchored_normal_matrix(const SparseMatrix& laplacian,
                                    const std::vector<uint32_t>& anchor_indices) {
  const int n = static_cast<int>(laplacian.rows());
  SparseMatrix normal = SparseMatrix(laplacian.transpose()) * laplacian;
  SparseMatrix selection(n, n);
  std::vector<Eigen::Triplet<double>> ones;
  ones.reserve(anchor_indices.size());
  for (uint32_t idx : anchor_indices) {
    ones.emplace_back(static_cast<int>(idx), static_cast<int>(idx), 1.0);
  }
  selection.setFromTriplets(ones.begin(), ones.end());
  normal += selection;
  normal.makeCompressed();
  return normal;
}

// One refinement pass against the stacked system keeps the accuracy of the
// normal-equations route close to a QR solve.
Eigen::MatrixXd refine_anchored(const Factorization& factor, const SparseMatrix& laplacian,
                                const std::vector<uint32_t>& anchor_indices,
                                const Eigen::MatrixXd& delta,
                                const Eigen::MatrixXd& anchor_values, Eigen::MatrixXd x) {
  Eigen::MatrixXd residual_top = delta - laplacian * x;
  Eigen::MatrixXd residual_anchor = anchor_values;
  for (size_t i = 0; i < anchor_indices.size(); ++i) {
    residual_anchor.row(i) -= x.row(anchor_indices[i]);
  }
  Eigen::MatrixXd rhs = laplacian.transpose() * residual_top;
  for (size_t i = 0; i < anchor_indices.size(); ++i) {
    rhs.row(anchor_indices[i]) += residual_anchor.row(i);
  }
  x += factor.solve(rhs);
  return x;
}

}  // namespace

Eigen::MatrixXd solve_anchored(const SparseMatrix& laplacian, const Eigen::MatrixXd& delta,
                               const std::vector<uint32_t>& anchor_indices,
                               const Eigen::MatrixXd& anchor_values, SolveMode mode) {
  const Eigen::Index n = laplacian.rows();
  if (delta.rows() != n) throw DimensionMismatch("delta row count does not match Laplacian");
  if (anchor_indices.empty()) throw InvalidCount("anchored solve needs at least one anchor");
  if (anchor_values.rows() != static_cast<Eigen::Index>(anchor_indices.size()) ||
      anchor_values.cols() != delta.cols()) {
    throw DimensionMismatch("anchor value matrix must be n_c x k");
  }
  for (uint32_t idx : anchor_indices) {
    if (idx >= static_cast<uint32_t>(n)) throw IndexOutOfRange("anchor index out of range");
  }

  const SparseMatrix normal = anchored_normal_matrix(laplacian, anchor_indices);
  Eigen::MatrixXd rhs = laplacian.transpose() * delta;
  for (size_t i = 0; i < anchor_indices.size(); ++i) {
    rhs.row(anchor_indices[i]) += anchor_values.row(i);
  }

  if (mode == SolveMode::Parallel) {
    Factorization factor(normal);
    if (factor.info() != Eigen::Success) {
      throw SingularSystem("anchored normal equations are not positive definite");
    }
    Eigen::MatrixXd x = factor.solve(rhs);
    return refine_anchored(factor, laplacian, anchor_indices, delta, anchor_values,
                           std::move(x));
  }

  Eigen::MatrixXd x(n, delta.cols());
  for (Eigen::Index f = 0; f < delta.cols(); ++f) {
    Factorization factor(normal);
    if (factor.info() != Eigen::Success) {
      throw SingularSystem("anchored normal equations are not positive definite");
    }
    Eigen::MatrixXd col = factor.solve(rhs.col(f));
    x.col(f) = refine_anchored(factor, laplacian, anchor_indices, delta.col(f),
                               anchor_values.col(f), std::move(col));
  }
  return x;
}

Eigen::MatrixXd solve_mean_constrained(const SparseMatrix& laplacian,
                                       const Eigen::MatrixXd& delta,
                                       const Eigen::VectorXd& means) {
  const Eigen::Index n = laplacian.rows();
  if (delta.rows() != n) throw DimensionMismatch("delta row count does not match Laplacian");
  if (means.size() != delta.cols()) {
    throw DimensionMismatch("one mean per frame column required");
  }

  // Pinning vertex 0 removes the constant nullspace without changing the
  // attainable residual; the mean is restored by a shift afterwards.
  SparseMatrix reduced = laplacian.middleCols(1, n - 1);
  SparseMatrix normal = SparseMatrix(reduced.transpose()) * reduced;
  Factorization factor(normal);
  if (factor.info() != Eigen::Success) {
    throw SingularSystem("reduced normal equations are not positive definite; "
                         "is the vertex graph connected?");
  }

  Eigen::MatrixXd x(n, delta.cols());
  Eigen::MatrixXd z = factor.solve(reduced.transpose() * delta);
  z += factor.solve(reduced.transpose() * (delta - reduced * z));
  x.row(0).setZero();
  x.bottomRows(n - 1) = z;
  for (Eigen::Index f = 0; f < delta.cols(); ++f) {
    x.col(f).array() += means(f) - x.col(f).mean();
  }
  return x;
}

}  // namespace dmc
