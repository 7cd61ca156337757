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

#include "dmc/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace dmc {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

struct BaseMesh {
  Eigen::MatrixXd vertices;   // n x 3
  Eigen::VectorXd elevation;  // spatial profile coordinate in [0, 1]
  std::vector<Face> faces;
};

BaseMesh make_cylinder(int n_target) {
  const int segments = std::max(3, static_cast<int>(std::lround(std::sqrt(n_target / 2.0))));
  const int rings = std::max(2, (n_target + segments - 1) / segments);
  const double height = 2.4;
  BaseMesh mesh;
  mesh.vertices.resize(static_cast<Eigen::Index>(rings) * segments, 3);
  mesh.elevation.resize(mesh.vertices.rows());
  for (int r = 0; r < rings; ++r) {
    const double z = height * r / (rings - 1);
    for (int s = 0; s < segments; ++s) {
      const double angle = kTau * s / segments;
      const Eigen::Index v = static_cast<Eigen::Index>(r) * segments + s;
      mesh.vertices.row(v) << std::cos(angle), std::sin(angle), z;
      mesh.elevation(v) = z / height;
    }
  }
  for (int r = 0; r + 1 < rings; ++r) {
    for (int s = 0; s < segments; ++s) {
      const uint32_t a = static_cast<uint32_t>(r * segments + s);
      const uint32_t b = static_cast<uint32_t>(r * segments + (s + 1) % segments);
      const uint32_t c = a + static_cast<uint32_t>(segments);
      const uint32_t d = b + static_cast<uint32_t>(segments);
      mesh.faces.push_back({a, b, c});
      mesh.faces.push_back({b, d, c});
    }
  }
  return mesh;
}

BaseMesh make_sphere_grid(int n_target) {
  const int segments = std::max(3, static_cast<int>(std::lround(std::sqrt(n_target - 2.0))));
  const int rows = std::max(2, (n_target - 2 + segments - 1) / segments);
  BaseMesh mesh;
  const Eigen::Index n = static_cast<Eigen::Index>(rows) * segments + 2;
  mesh.vertices.resize(n, 3);
  mesh.elevation.resize(n);
  mesh.vertices.row(0) << 0.0, 0.0, 1.0;  // north pole
  mesh.elevation(0) = 1.0;
  for (int r = 0; r < rows; ++r) {
    const double polar = std::numbers::pi * (r + 1) / (rows + 1);
    for (int s = 0; s < segments; ++s) {
      const double angle = kTau * s / segments;
      const Eigen::Index v = 1 + static_cast<Eigen::Index>(r) * segments + s;
      mesh.vertices.row(v) << std::sin(polar) * std::cos(angle),
          std::sin(polar) * std::sin(angle), std::cos(polar);
      mesh.elevation(v) = 0.5 * (mesh.vertices(v, 2) + 1.0);
    }
  }
  const uint32_t south = static_cast<uint32_t>(n - 1);
  mesh.vertices.row(south) << 0.0, 0.0, -1.0;
  mesh.elevation(south) = 0.0;
  auto ring_vertex = [&](int r, int s) {
    return static_cast<uint32_t>(1 + r * segments + (s % segments));
  };
  for (int s = 0; s < segments; ++s) {
    mesh.faces.push_back({0u, ring_vertex(0, s), ring_vertex(0, s + 1)});
    mesh.faces.push_back({south, ring_vertex(rows - 1, s + 1), ring_vertex(rows - 1, s)});
  }
  for (int r = 0; r + 1 < rows; ++r) {
    for (int s = 0; s < segments; ++s) {
      const uint32_t a = ring_vertex(r, s);
      const uint32_t b = ring_vertex(r, s + 1);
      const uint32_t c = ring_vertex(r + 1, s);
      const uint32_t d = ring_vertex(r + 1, s + 1);
      mesh.faces.push_back({a, b, c});
      mesh.faces.push_back({b, d, c});
    }
  }
  return mesh;
}

std::vector<DeformMode> default_modes(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(0.0, kTau);
  DeformMode bend;
  bend.kind = DeformMode::Kind::Bend;
  bend.amplitude = 0.25;
  bend.frequency = 1.0;
  bend.phase = phase(rng);
  DeformMode twist;
  twist.kind = DeformMode::Kind::Twist;
  twist.amplitude = 0.35;
  twist.frequency = 0.5;
  twist.phase = phase(rng);
  return {bend, twist};
}

}  // namespace

MeshSequence synth_sequence(const SynthesisParams& params) {
  if (params.n_target < 4) throw ConfigError("n_target must be >= 4");
  if (params.k < 1) throw ConfigError("k must be >= 1");
  for (const DeformMode& mode : params.modes) {
    if (!std::isfinite(mode.amplitude)) throw ConfigError("mode amplitude must be finite");
  }

  const BaseMesh base = params.shape == BaseShape::Cylinder
                            ? make_cylinder(params.n_target)
                            : make_sphere_grid(params.n_target);
  std::mt19937_64 rng(params.seed);
  const std::vector<DeformMode> modes =
      params.modes.empty() ? default_modes(rng) : params.modes;

  const Eigen::Index n = base.vertices.rows();
  std::vector<Eigen::MatrixXd> frames(static_cast<size_t>(params.k));
  for (int f = 0; f < params.k; ++f) {
    const double t = static_cast<double>(f) / params.k;
    Eigen::MatrixXd frame = base.vertices;
    for (const DeformMode& mode : modes) {
      const double drive = mode.amplitude * std::sin(kTau * mode.frequency * t + mode.phase);
      if (mode.kind == DeformMode::Kind::Bend) {
        const int axis = mode.axis == 1 ? 1 : 0;
        for (Eigen::Index v = 0; v < n; ++v) {
          frame(v, axis) +=
              drive * std::sin(std::numbers::pi * mode.harmonic * base.elevation(v));
        }
      } else {
        for (Eigen::Index v = 0; v < n; ++v) {
          const double angle = drive * base.elevation(v) * mode.harmonic;
          const double c = std::cos(angle);
          const double s = std::sin(angle);
          const double x = frame(v, 0);
          const double y = frame(v, 1);
          frame(v, 0) = c * x - s * y;
          frame(v, 1) = s * x + c * y;
        }
      }
    }
    frames[f] = std::move(frame);
  }
  return MeshSequence::from_frames(base.faces, frames);
}

}  // namespace dmc
