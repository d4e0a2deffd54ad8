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

// Compilers from surrogate IR to OptProblem.
//
// Variable names are fixed so emitted files are reproducible:
//   x[i]             raw inputs            xs[i]        scaled inputs
//   zhat[l][i]       pre-activation        z[l][i]      post-activation
//   q[l][i]          ReLU binary (1 = active)
//   zp[l][i][k]      partition auxiliaries
//   y[j]             outputs               ys[j]        scaled outputs
//   yb[f][j]         GBT split binaries    zl[t][l]     GBT leaf weights
// Without output scaling the last layer's post-activation variable is y[j].

#ifndef SURROGATE_FORMULATION_H_
#define SURROGATE_FORMULATION_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "surrogate/bounds.h"
#include "surrogate/ensemble.h"
#include "surrogate/network.h"
#include "surrogate/problem.h"

namespace surrogate {

enum class FormulationType {
  kFullSpaceSmooth,
  kReducedSpaceSmooth,
  kReluBigM,
  kReluComplementarity,
  kReluPartition,
  kGbtBigM,
};

struct FormulationKind {
  FormulationType type = FormulationType::kReluBigM;
  // Partition classes per neuron (ReluPartition only); clamped to fan-in.
  std::size_t partitions = 2;
};

// CLI spelling: fullspace, reducedspace, bigm, complementarity, partition, gbt.
std::string_view FormulationName(FormulationType type);
std::optional<FormulationType> ParseFormulationName(std::string_view name);

bool IsReluFormulation(FormulationType type);

// Throws FormulationError when the network cannot use `kind`.
void CheckCompatible(const NetworkDefinition& net, const FormulationKind& kind);

// Stable ReLU neurons (pre-activation interval on one side of zero) are
// compiled without a binary: z is fixed to 0 or equated to the affine map.
OptProblem Formulate(const NetworkDefinition& net, const FormulationKind& kind);

// Name of the variable holding neuron (layer, i)'s post-activation value.
std::string PostActivationName(const NetworkDefinition& net, std::size_t layer,
                               std::size_t neuron);

// Lifts an input point to a full assignment: intermediates from the exact
// forward pass, binaries from the activation signs (pre > 0 means active).
std::vector<double> LiftForwardPass(const NetworkDefinition& net,
                                    const FormulationKind& kind,
                                    const OptProblem& problem,
                                    std::span<const double> x);

struct GbtOptions {
  // Gap enforced on the right branch, x_f >= threshold + epsilon.
  double epsilon = 1e-6;
};

struct GbtFormulation {
  OptProblem problem;
  std::vector<std::string> warnings;
  // Distinct sorted thresholds per feature, as used for yb[f][j].
  std::vector<std::vector<double>> thresholds;
};

GbtFormulation FormulateGbt(const TreeEnsemble& ensemble,
                            const GbtOptions& options = {});

std::vector<double> LiftGbtPoint(const TreeEnsemble& ensemble,
                                 const GbtFormulation& formulation,
                                 std::span<const double> x);

// Linear objective over block interface variables, e.g. "y[1] - y[0]".
struct ObjectiveSpec {
  ObjectiveSense sense = ObjectiveSense::kMaximize;
  std::vector<std::pair<std::string, double>> terms;
};

// Grammar: term (('+'|'-') term)*, term := [number '*'] name. Throws
// UsageError on malformed text.
ObjectiveSpec ParseObjectiveSpec(std::string_view text, ObjectiveSense sense);

// Installs the objective. Names must be input or output variables of the
// block (throws UsageError otherwise).
OptProblem LinkObjective(OptProblem problem, const ObjectiveSpec& spec);

struct AdversarialQuery {
  std::vector<double> x0;  // raw units
  std::size_t true_label = 0;
  std::size_t target_label = 1;
  double radius = 0.0;  // l-infinity
};

// The network with its input box intersected with the radius ball.
NetworkDefinition RestrictInputBox(const NetworkDefinition& net,
                                   std::span<const double> x0, double radius);

// Big-M problem maximizing y[target] - y[true] over the perturbation ball.
OptProblem AdversarialProblem(const NetworkDefinition& net,
                              const AdversarialQuery& query);

}  // namespace surrogate

#endif  // SURROGATE_FORMULATION_H_
