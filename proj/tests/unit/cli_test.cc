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

#include "cli.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "surrogate/emit.h"
#include "surrogate/formulation.h"
#include "surrogate/ingest.h"
#include "test_support.h"

namespace surrogate::cli {
namespace {

using ::surrogate::testing::ModelPath;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string FirstLine(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

std::string TempPath(const std::string& name) {
  return ::testing::TempDir() + "/" + name;
}

TEST(CliTest, VerifyValidNet) {
  const CliRun r = Cli({"verify", ModelPath("scaled_relu.json"), "--kind", "bigm",
                     "--samples", "100", "--seed", "7"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.err.empty());
}

TEST(CliTest, VerifyEveryKind) {
  for (const char* kind : {"bigm", "complementarity", "partition"}) {
    EXPECT_EQ(Cli({"verify", ModelPath("classifier_4x3.json"), "--kind", kind})
                  .code,
              kExitOk);
  }
  for (const char* kind : {"fullspace", "reducedspace"}) {
    EXPECT_EQ(Cli({"verify", ModelPath("smooth_net.json"), "--kind", kind}).code,
              kExitOk);
  }
  EXPECT_EQ(Cli({"verify", ModelPath("gbt_small.json")}).code, kExitOk);
}

TEST(CliTest, PartitionOnConvNetIsFormulationError) {
  const CliRun r = Cli({"formulate", ModelPath("conv_relu.json"), "--kind",
                     "partition", "--partitions", "2"});
  EXPECT_EQ(r.code, kExitFormulation);
  EXPECT_EQ(r.err.rfind("error[formulation]:", 0), 0u) << r.err;
  EXPECT_NE(r.err.find("dense layers only"), std::string::npos);
}

TEST(CliTest, SolveStump) {
  const CliRun r =
      Cli({"solve", ModelPath("stump.json"), "--kind", "gbt", "--sense", "max"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(FirstLine(r.out), "Optimal 2.0");
  EXPECT_EQ(FirstLine(Cli({"solve", ModelPath("stump.json"), "--sense", "min"})
                          .out),
            "Optimal 1.0");
}

TEST(CliTest, ReluKindsDifferByOneFlag) {
  std::vector<std::string> firsts;
  for (const char* kind : {"bigm", "partition", "complementarity"}) {
    const CliRun r = Cli({"solve", ModelPath("scaled_relu.json"), "--kind", kind,
                       "--objective", "y[0]"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    firsts.push_back(FirstLine(r.out));
  }
  EXPECT_EQ(firsts[0], firsts[1]);
  EXPECT_EQ(firsts[0], firsts[2]);
}

double SolveValue(const std::vector<std::string>& args) {
  const CliRun r = Cli(args);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  return nlohmann::json::parse(r.out).at("objective").get<double>();
}

TEST(CliTest, SolveAndOracleAgreeOnBundledModels) {
  for (const char* name : {"abs_net.json", "relu_neuron.json",
                           "scaled_relu.json", "conv_relu.json",
                           "classifier_4x3.json", "stump.json",
                           "gbt_small.json"}) {
    for (const char* sense : {"max", "min"}) {
      const std::string path = ModelPath(name);
      const double s = SolveValue({"solve", path, "--sense", sense, "--json"});
      const double o = SolveValue({"oracle", path, "--sense", sense, "--json"});
      EXPECT_NEAR(s, o, 1e-6) << name << " " << sense;
    }
  }
}

TEST(CliTest, EmitWritesFile) {
  const std::string path = TempPath("relu.lp");
  const CliRun r = Cli({"emit", ModelPath("relu_neuron.json"), "--kind", "bigm",
                     "--format", "lp", "--out", path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const OptProblem p = Formulate(
      ReadModelFile(ModelPath("relu_neuron.json")).network(),
      {FormulationType::kReluBigM, 2});
  EXPECT_EQ(testing::ReadFile(path), EmitLp(p));
  std::remove(path.c_str());
  EXPECT_EQ(Cli({"emit", ModelPath("smooth_net.json"), "--format", "lp"}).code,
            kExitFormulation);
  EXPECT_EQ(Cli({"emit", ModelPath("smooth_net.json"), "--format", "nlp"}).code,
            kExitOk);
  EXPECT_EQ(Cli({"emit", ModelPath("smooth_net.json"), "--format", "xls"}).code,
            kExitUsage);
}

TEST(CliTest, ExitCodes) {
  CliRun r = Cli({"frobnicate"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_EQ(r.err.rfind("error[usage]:", 0), 0u) << r.err;
  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"solve", ModelPath("abs_net.json"), "--kind", "bogus"}).code,
            kExitUsage);

  r = Cli({"inspect", "/nonexistent.json"});
  EXPECT_EQ(r.code, kExitParse);
  EXPECT_EQ(r.err.rfind("error[parse]:", 0), 0u) << r.err;

  const std::string bad = TempPath("bad.json");
  std::ofstream(bad) << "{\"input_size\": 1,\n \"layers\": [}\n";
  EXPECT_EQ(Cli({"inspect", bad}).code, kExitParse);
  std::remove(bad.c_str());

  EXPECT_EQ(Cli({"solve", ModelPath("smooth_net.json")}).code, kExitSolver);
  EXPECT_EQ(Cli({"bounds", ModelPath("stump.json")}).code, kExitUsage);
  EXPECT_EQ(Cli({"oracle", ModelPath("smooth_net.json")}).code, kExitUsage);
}

TEST(CliTest, NodeLimitFlagAndEnvironment) {
  const std::string model = ModelPath("classifier_4x3.json");
  CliRun r = Cli({"solve", model, "--objective", "y[1] - y[0]", "--node-limit",
               "1"});
  EXPECT_EQ(r.code, kExitSolver);
  EXPECT_EQ(r.err.rfind("error[solver]: NodeLimit", 0), 0u) << r.err;
  setenv("SURROGATE_COMPILER_NODE_LIMIT", "1", 1);
  EXPECT_EQ(Cli({"solve", model, "--objective", "y[1] - y[0]"}).code,
            kExitSolver);
  EXPECT_EQ(Cli({"solve", model, "--objective", "y[1] - y[0]", "--node-limit",
                 "1000000"})
                .code,
            kExitOk);
  unsetenv("SURROGATE_COMPILER_NODE_LIMIT");
}

TEST(CliTest, InspectBoundsFormulateRun) {
  for (const char* cmd : {"inspect", "bounds", "formulate"}) {
    const CliRun r = Cli({cmd, ModelPath("scaled_relu.json")});
    EXPECT_EQ(r.code, kExitOk) << cmd << r.err;
    EXPECT_FALSE(r.out.empty());
    const CliRun j = Cli({cmd, ModelPath("scaled_relu.json"), "--json"});
    EXPECT_NO_THROW(nlohmann::json::parse(j.out)) << cmd;
  }
  const CliRun f = Cli({"formulate", ModelPath("relu_neuron.json"), "--json"});
  const nlohmann::json j = nlohmann::json::parse(f.out);
  EXPECT_EQ(j.at("linear").get<int>(), 5);
  EXPECT_EQ(j.at("binaries").get<int>(), 1);
}

TEST(CliTest, Adversarial) {
  const nlohmann::json cases = nlohmann::json::parse(
      testing::ReadFile(ModelPath("adversarial_cases.json")));
  const std::string model = ModelPath(cases.at("model").get<std::string>());
  const std::string input = TempPath("x0.json");
  for (std::size_t k : {std::size_t{0}, cases.at("cases").size() - 1}) {
    const nlohmann::json& c = cases.at("cases")[k];
    std::ofstream(input) << nlohmann::json{{"x", c.at("x0")}}.dump();
    const CliRun r = Cli({"adversarial", model, "--input", input, "--true",
                       std::to_string(c.at("true").get<int>()), "--target",
                       std::to_string(c.at("target").get<int>()), "--radius",
                       FormatValue(c.at("radius").get<double>())});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const bool sat = c.at("oracle_margin").get<double>() > 0;
    EXPECT_EQ(r.out.rfind(sat ? "SAT margin " : "UNSAT margin ", 0), 0u)
        << r.out;
    EXPECT_EQ(r.out.find("\ninput ") != std::string::npos, sat);
  }
  const CliRun missing = Cli({"adversarial", model, "--input",
                           TempPath("missing.json"), "--true", "0",
                           "--target", "1", "--radius", "0.1"});
  EXPECT_EQ(missing.code, kExitParse);
  EXPECT_EQ(Cli({"adversarial", model, "--input", input, "--true", "0",
                 "--target", "1", "--radius", "-1"})
                .code,
            kExitUsage);
  std::remove(input.c_str());
}

TEST(FormatValueTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatValue(2.0), "2.0");
  EXPECT_EQ(FormatValue(0.1), "0.1");
  EXPECT_EQ(FormatValue(-1.5), "-1.5");
  EXPECT_EQ(FormatValue(1e300), "1e+300");
  EXPECT_EQ(FormatValue(30.0), "30.0");
  EXPECT_EQ(FormatValue(1234567.0), "1234567.0");
  EXPECT_EQ(FormatValue(0.0001), "0.0001");
  EXPECT_EQ(FormatValue(1e-5), "1e-05");
  EXPECT_EQ(FormatValue(1e16), "1e+16");
  EXPECT_EQ(FormatValue(141.875), "141.875");
  EXPECT_EQ(std::stod(FormatValue(1.0 / 3.0)), 1.0 / 3.0);
}

}  // namespace
}  // namespace surrogate::cli
