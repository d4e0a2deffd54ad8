// Copyright 2026 The Surrogate Compiler Authors
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

#include "surrogate/status.h"

#include <utility>

namespace surrogate {
namespace {

std::string Locate(const std::string& path, const std::string& message,
                   std::optional<int> line) {
  std::string out;
  if (line) out += "line " + std::to_string(*line) + ": ";
  if (!path.empty()) out += path + ": ";
  return out + message;
}

}  // namespace

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kModel:
      return "model";
    case ErrorKind::kParse:
      return "parse";
    case ErrorKind::kFormulation:
      return "formulation";
    case ErrorKind::kSolver:
      return "solver";
    case ErrorKind::kUsage:
      return "usage";
  }
  return "unknown";
}

ParseError::ParseError(std::string path, const std::string& message,
                       std::optional<int> line)
    : Error(ErrorKind::kParse, Locate(path, message, line)),
      path_(std::move(path)),
      line_(line) {}

}  // namespace surrogate
