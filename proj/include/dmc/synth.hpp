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

#include <cstdint>
#include <vector>

#include "dmc/mesh.hpp"

namespace dmc {

enum class BaseShape : uint8_t { Cylinder, SphereGrid };

/// One sinusoidal deformation of the base shape. Bends displace a single
/// coordinate with a smooth spatial profile; twists rotate around the main
/// axis with height-proportional angle. `harmonic` sets the spatial
/// frequency of the profile, `frequency` the number of temporal cycles
/// over the sequence.
struct DeformMode {
  enum class Kind : uint8_t { Bend, Twist };
  Kind kind = Kind::Bend;
  double amplitude = 0.25;
  double frequency = 1.0;
  double phase = 0.0;
  int harmonic = 1;
  int axis = 0;  // 0 = x, 1 = y (bends only)
};

struct SynthesisParams {
  BaseShape shape = BaseShape::Cylinder;
  int n_target = 500;
  int k = 32;
  std::vector<DeformMode> modes;  // empty = default bend + twist
  uint64_t seed = 0;
};

// Deterministic synthetic animation: a connected triangulated base shape
// with smooth temporal motion (per-frame displacements stay bounded by the
// mode amplitudes). Same params and seed give bit-identical output.
MeshSequence synth_sequence(const SynthesisParams& params);

}  // namespace dmc
