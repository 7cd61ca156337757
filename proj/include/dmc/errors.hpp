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

#include <stdexcept>
#include <string>

namespace dmc {

// Error taxonomy shared by the whole library. Every class carries a stable
// numeric code so the CLI can map failures to distinct exit codes.
class Error : public std::runtime_error {
public:
  Error(int code, const std::string& kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), code_(code), kind_(kind) {}
  int code() const { return code_; }
  const std::string& kind() const { return kind_; }

private:
  int code_;
  std::string kind_;
};

#define DMC_DEFINE_ERROR(Name, Code)                        \
  class Name : public Error {                               \
  public:                                                   \
    explicit Name(const std::string& what)                  \
        : Error(Code, #Name, what) {}                       \
  }

DMC_DEFINE_ERROR(DimensionMismatch, 5);
DMC_DEFINE_ERROR(IndexOutOfRange, 4);
DMC_DEFINE_ERROR(DegenerateFace, 4);
DMC_DEFINE_ERROR(ValidationError, 4);
DMC_DEFINE_ERROR(ConfigError, 5);
DMC_DEFINE_ERROR(InvalidBits, 5);
DMC_DEFINE_ERROR(InvalidCount, 5);
DMC_DEFINE_ERROR(BlockSizeError, 5);
DMC_DEFINE_ERROR(ConvergenceFailure, 9);
DMC_DEFINE_ERROR(RankDeficiency, 9);
DMC_DEFINE_ERROR(SignMisalignment, 9);
DMC_DEFINE_ERROR(SingularSystem, 9);
DMC_DEFINE_ERROR(CorruptPayload, 6);
DMC_DEFINE_ERROR(CorruptStream, 6);
DMC_DEFINE_ERROR(VersionMismatch, 7);
DMC_DEFINE_ERROR(ParseError, 3);
DMC_DEFINE_ERROR(VertexCountMismatch, 3);
DMC_DEFINE_ERROR(ConnectivityMismatch, 3);
DMC_DEFINE_ERROR(IoError, 8);

#undef DMC_DEFINE_ERROR

}  // namespace dmc
