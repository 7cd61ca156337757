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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dmc/errors.hpp"

namespace dmc {

using Face = std::array<uint32_t, 3>;

enum class Axis : int { X = 0, Y = 1, Z = 2 };

/// An animation of k frames over a fixed triangle connectivity.
/// Geometry is stored axis-major: three k-by-n matrices whose row f holds
/// the per-vertex coordinates of frame f. frame(f) assembles the usual
/// n-by-3 view on demand.
class MeshSequence {
public:
  MeshSequence() = default;
  MeshSequence(std::vector<Face> faces, std::array<Eigen::MatrixXd, 3> axes);

  // Builds the axis-major storage from per-frame n-by-3 matrices.
  static MeshSequence from_frames(std::vector<Face> faces,
                                  const std::vector<Eigen::MatrixXd>& frames);

  int n() const { return static_cast<int>(axes_[0].cols()); }
  int k() const { return static_cast<int>(axes_[0].rows()); }

  const std::vector<Face>& faces() const { return faces_; }
  const Eigen::MatrixXd& axis(Axis a) const { return axes_[static_cast<int>(a)]; }
  Eigen::MatrixXd frame(int f) const;

  bool operator==(const MeshSequence& other) const;

private:
  std::vector<Face> faces_;
  std::array<Eigen::MatrixXd, 3> axes_;  // each k x n
};

/// First-ring vertex adjacency: sorted, deduplicated neighbor lists.
struct Connectivity {
  int n = 0;
  std::vector<std::vector<uint32_t>> neighbors;

  int degree(int i) const { return static_cast<int>(neighbors[i].size()); }
};

// Edges come from triangle sides; an edge shared by several triangles is
// recorded once. Throws IndexOutOfRange / DegenerateFace on bad faces.
Connectivity build_connectivity(const std::vector<Face>& faces, int n);

// True when the vertex graph is connected (BFS over neighbor lists).
bool is_connected(const Connectivity& c);

struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

// Checks the encoder's input contract: at least one face, a connected
// vertex graph with no isolated vertices, finite coordinates.
ValidationReport validate_sequence(const MeshSequence& s);

// Row f, column i of the result holds coordinate `axis` of vertex i at
// frame f. Identical to MeshSequence::axis; kept as a free function so the
// pipeline reads as matrix algebra.
inline const Eigen::MatrixXd& sequence_axis_matrix(const MeshSequence& s, Axis axis) {
  return s.axis(axis);
}

}  // namespace dmc
