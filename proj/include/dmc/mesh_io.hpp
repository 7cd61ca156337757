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
#include <string>
#include <vector>

#include "dmc/mesh.hpp"

namespace dmc {

enum class MeshFormat { Off, Obj };

struct LoadedMesh {
  Eigen::MatrixXd vertices;  // n x 3
  std::vector<Face> faces;
};

// Triangle-only OFF/OBJ readers; format comes from the file extension.
// OBJ: v/f records are honored (1-based indices, optional /t and /n parts),
// everything else is skipped; negative indices and non-triangle faces are
// rejected. Errors carry file and line.
LoadedMesh load_mesh(const std::string& path);
void save_mesh(const std::string& path, const Eigen::MatrixXd& vertices,
               const std::vector<Face>& faces);

// Resolves an --input argument into an ordered frame file list:
//   * a pattern with one %d (optionally zero-padded, e.g. frame_%04d.off)
//     expands from index 0 (or 1) upward while files exist,
//   * a .txt manifest lists one path per line, resolved against the
//     manifest's directory, '#' comments allowed,
//   * a path with '*' or '?' matches files in its directory, sorted
//     lexicographically,
//   * anything else is a single file.
std::vector<std::string> expand_input_pattern(const std::string& input);

// All frames must agree on vertex count and face list.
MeshSequence load_sequence(const std::vector<std::string>& paths);

// Writes one file per frame. `pattern` must contain one %d placeholder
// unless k == 1; the extension selects the format. Returns written paths.
std::vector<std::string> save_sequence(const MeshSequence& s, const std::string& pattern);

std::vector<uint8_t> read_file(const std::string& path);

// Writes to a sibling temp file and renames into place, so failed runs
// never leave partial outputs.
void write_file_atomic(const std::string& path, const void* data, size_t size);
void write_file_atomic(const std::string& path, const std::vector<uint8_t>& bytes);
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace dmc
