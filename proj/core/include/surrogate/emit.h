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

// Problem serializers. All three formats use bracket-free aliases for names
// ("z[0][1]" is written as z_0_1) and print reals with 17 significant digits.
//
// The nlp listing is a plain-text format of our own:
//
//   \ surrogate-nlp 1
//   variables:
//     x_0 continuous -1 1
//     q_0_0 binary 0 1
//   inputs: x_0
//   outputs: y_0
//   objective: maximize y_0
//   linear constraints:
//     c_pre_0_0: zhat_0_0 - x_0 = 0
//   nonlinear constraints:
//     c_act_0_0: z_0_0 - sigmoid(zhat_0_0) = 0
//   complementarity:
//     cc_0_0: compl(z_0_0, z_0_0 - zhat_0_0)
//   end
//
// Expressions are infix with + - * / and the functions exp, log, tanh,
// sigmoid, softplus and max; infinite bounds are written -inf and inf.

#ifndef SURROGATE_EMIT_H_
#define SURROGATE_EMIT_H_

#include <string>
#include <string_view>

#include "surrogate/problem.h"

namespace surrogate {

// "%.17g", with -0 printed as 0 and infinities as inf / -inf.
std::string FormatReal(double value);

// Infix rendering used by the nlp listing.
std::string FormatExpr(const Expr& expr, const OptProblem& problem);

// LP and MPS carry linear and binary content only; both throw
// FormulationError on nonlinear rows, complementarity pairs or a nonlinear
// objective.
std::string EmitLp(const OptProblem& problem);
std::string EmitMps(const OptProblem& problem,
                    std::string_view name = "SURROGATE");
std::string EmitNlp(const OptProblem& problem);

// Readers for the three formats, enough to round-trip emitted files. They
// throw ParseError with the offending line.
OptProblem ReadLp(std::string_view text);
OptProblem ReadMps(std::string_view text);
OptProblem ReadNlp(std::string_view text);

}  // namespace surrogate

#endif  // SURROGATE_EMIT_H_
