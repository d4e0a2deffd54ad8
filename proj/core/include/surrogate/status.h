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

#ifndef SURROGATE_STATUS_H_
#define SURROGATE_STATUS_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace surrogate {

// Broad failure classes. The command-line tool maps each one to an exit code.
enum class ErrorKind {
  kModel,        // an IR value violates one of its invariants
  kParse,        // malformed exchange-format text
  kFormulation,  // model/formulation combination is not supported
  kSolver,       // the built-in solver cannot handle or finish a problem
  kUsage,        // bad argument passed to a library entry point
};

std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ModelError : public Error {
 public:
  explicit ModelError(const std::string& message)
      : Error(ErrorKind::kModel, message) {}
};

// Carries the location of the offending input: a field path such as
// `layers[0].bias` and, for syntax errors, the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& message,
             std::optional<int> line = std::nullopt);

  const std::string& path() const { return path_; }
  std::optional<int> line() const { return line_; }

 private:
  std::string path_;
  std::optional<int> line_;
};

class FormulationError : public Error {
 public:
  explicit FormulationError(const std::string& message)
      : Error(ErrorKind::kFormulation, message) {}
};

class SolverError : public Error {
 public:
  explicit SolverError(const std::string& message)
      : Error(ErrorKind::kSolver, message) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message)
      : Error(ErrorKind::kUsage, message) {}
};

}  // namespace surrogate

#endif  // SURROGATE_STATUS_H_
