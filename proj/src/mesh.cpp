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

#include "dmc/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace dmc {

MeshSequence::MeshSequence(std::vector<Face> faces, std::array<Eigen::MatrixXd, 3> axes)
    : faces_(std::move(faces)), axes_(std::move(axes)) {
  for (int a = 1; a < 3; ++a) {
    if (axes_[a].rows() != axes_[0].rows() || axes_[a].cols() != axes_[0].cols()) {
      throw DimensionMismatch("axis matrices must share one k x n shape");
    }
  }
}

MeshSequence MeshSequence::from_frames(std::vector<Face> faces,
                                       const std::vector<Eigen::MatrixXd>& frames) {
  if (frames.empty()) throw DimensionMismatch("sequence needs at least one frame");
  const auto n = frames[0].rows();
  std::array<Eigen::MatrixXd, 3> axes;
  for (auto& a : axes) a.resize(static_cast<Eigen::Index>(frames.size()), n);
  for (size_t f = 0; f < frames.size(); ++f) {
    if (frames[f].rows() != n || frames[f].cols() != 3) {
      throw VertexCountMismatch("frame " + std::to_string(f) + " has " +
                                std::to_string(frames[f].rows()) + " vertices, expected " +
                                std::to_string(n));
    }
    for (int a = 0; a < 3; ++a) axes[a].row(static_cast<Eigen::Index>(f)) = frames[f].col(a).transpose();
  }
  return MeshSequence(std::move(faces), std::move(axes));
}

Eigen::MatrixXd MeshSequence::frame(int f) const {
  Eigen::MatrixXd m(n(), 3);
  for (int a = 0; a < 3; ++a) m.col(a) = axes_[a].row(f).transpose();
  return m;
}

bool MeshSequence::operator==(const MeshSequence& other) const {
  return faces_ == other.faces_ && axes_[0] == other.axes_[0] &&
         axes_[1] == other.axes_[1] && axes_[2] == other.axes_[2];
}

Connectivity build_connectivity(const std::vector<Face>& faces, int n) {
  if (faces.empty()) throw ValidationError("face list is empty");
  Connectivity c;
  c.n = n;
  c.neighbors.resize(static_cast<size_t>(n));
  for (size_t t = 0; t < faces.size(); ++t) {
    const Face& f = faces[t];
    for (int j = 0; j < 3; ++j) {
      if (f[j] >= static_cast<uint32_t>(n)) {
        throw IndexOutOfRange("face " + std::to_string(t) + " refers to vertex " +
                              std::to_string(f[j]) + " >= " + std::to_string(n));
      }
    }
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
      throw DegenerateFace("face " + std::to_string(t) + " repeats a vertex index");
    }
    for (int j = 0; j < 3; ++j) {
      c.neighbors[f[j]].push_back(f[(j + 1) % 3]);
      c.neighbors[f[j]].push_back(f[(j + 2) % 3]);
    }
  }
  for (auto& list : c.neighbors) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return c;
}

bool is_connected(const Connectivity& c) {
  if (c.n == 0) return false;
  std::vector<char> seen(static_cast<size_t>(c.n), 0);
  std::deque<uint32_t> queue{0};
  seen[0] = 1;
  int visited = 1;
  while (!queue.empty()) {
    const uint32_t v = queue.front();
    queue.pop_front();
    for (uint32_t w : c.neighbors[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++visited;
        queue.push_back(w);
      }
    }
  }
  return visited == c.n;
}

ValidationReport validate_sequence(const MeshSequence& s) {
  ValidationReport report;
  if (s.n() == 0 || s.k() == 0) {
    report.issues.push_back("sequence is empty");
    return report;
  }
  if (s.faces().empty()) {
    report.issues.push_back("face list is empty");
    return report;
  }
  try {
    Connectivity c = build_connectivity(s.faces(), s.n());
    for (int i = 0; i < c.n; ++i) {
      if (c.neighbors[i].empty()) {
        report.issues.push_back("vertex " + std::to_string(i) + " is isolated");
        break;
      }
    }
    if (!is_connected(c)) report.issues.push_back("graph not connected");
  } catch (const Error& e) {
    report.issues.push_back(e.what());
  }
  for (int a = 0; a < 3; ++a) {
    if (!s.axis(static_cast<Axis>(a)).allFinite()) {
      report.issues.push_back("non-finite coordinate in axis " + std::string(1, "xyz"[a]));
    }
  }
  return report;
}

}  // namespace dmc
