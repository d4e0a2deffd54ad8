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

#include "surrogate/ingest.h"

#include <string>

#include <gtest/gtest.h>

#include "surrogate/status.h"
#include "test_support.h"

namespace surrogate {
namespace {

constexpr char kMinimalNet[] = R"({
  "format_version": 1,
  "input_size": 1,
  "input_bounds": [[-1, 1]],
  "layers": [{"type": "dense", "weights": [[1.0]], "bias": [0.0],
              "activation": "relu"}]
})";

std::string Replace(std::string text, const std::string& from,
                    const std::string& to) {
  text.replace(text.find(from), from.size(), to);
  return text;
}

ParseError ExpectParseError(const std::string& text, bool ensemble = false) {
  try {
    if (ensemble) {
      ParseEnsemble(text);
    } else {
      ParseNetwork(text);
    }
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError for " << text;
  return ParseError("", "");
}

TEST(ParseNetworkTest, MinimalFile) {
  const ParseReport report = ParseNetwork(kMinimalNet);
  ASSERT_TRUE(report.is_network());
  const NetworkDefinition& net = report.network();
  ASSERT_EQ(net.layers.size(), 1u);
  EXPECT_EQ(net.layers[0].activation, Activation::kRelu);
  EXPECT_EQ(net.input_bounds[0], (Interval{-1, 1}));
  ASSERT_EQ(report.warnings.size(), 1u);
  EXPECT_NE(report.warnings[0].find("scaling"), std::string::npos);
}

TEST(ParseNetworkTest, UnknownActivationNamesField) {
  const ParseError e =
      ExpectParseError(Replace(kMinimalNet, "\"relu\"", "\"swish\""));
  EXPECT_EQ(e.path(), "layers[0].activation");
  EXPECT_NE(std::string(e.what()).find("swish"), std::string::npos);
}

TEST(ParseNetworkTest, BiasLengthMismatchCitesLayer) {
  const std::string text = R"({
    "input_size": 3, "input_bounds": [[0,1],[0,1],[0,1]],
    "layers": [{"type": "dense", "weights": [[1,2,3],[4,5,6]],
                "bias": [0,0,0], "activation": "linear"}]})";
  const ParseError e = ExpectParseError(text);
  EXPECT_NE(std::string(e.what()).find("layer 0"), std::string::npos)
      << e.what();
}

TEST(ParseNetworkTest, SyntaxErrorCarriesLine) {
  const ParseError e = ExpectParseError("{\n\"input_size\": 1,\n]");
  ASSERT_TRUE(e.line().has_value());
  EXPECT_EQ(*e.line(), 3);
}

TEST(ParseNetworkTest, RejectsNonFiniteNumbers) {
  ExpectParseError(Replace(kMinimalNet, "[[1.0]]", "[[1e999]]"));
  ExpectParseError(Replace(kMinimalNet, "[[1.0]]", "[[NaN]]"));
}

TEST(ParseNetworkTest, UnknownTopLevelKeyWarns) {
  const std::string text = Replace(kMinimalNet, "\"input_size\"",
                                   "\"comment\": \"hi\", \"input_size\"");
  const ParseReport report = ParseNetwork(text);
  ASSERT_EQ(report.warnings.size(), 2u);
  EXPECT_NE(report.warnings[0].find("comment"), std::string::npos);
}

TEST(ParseNetworkTest, RejectsInvertedBounds) {
  ExpectParseError(Replace(kMinimalNet, "[[-1, 1]]", "[[1, -1]]"));
}

TEST(ParseNetworkTest, RejectsWrongTypes) {
  ExpectParseError(Replace(kMinimalNet, "\"input_size\": 1",
                           "\"input_size\": \"one\""));
  ExpectParseError(Replace(kMinimalNet, "\"dense\"", "\"pool\""));
  ExpectParseError(Replace(kMinimalNet, "\"bias\": [0.0],", ""));
}

constexpr char kStump[] = R"({
  "n_features": 1, "base_score": 0.0, "feature_bounds": [[0, 1]],
  "trees": [{"nodes": [{"feature": 0, "threshold": 0.5, "left": 1, "right": 2},
                       {"leaf": 1.0}, {"leaf": 2.0}]}]
})";

TEST(ParseEnsembleTest, SingleSplitTree) {
  const ParseReport report = ParseEnsemble(kStump);
  ASSERT_FALSE(report.is_network());
  ASSERT_EQ(report.ensemble().trees.size(), 1u);
  EXPECT_EQ(report.ensemble().trees[0].nodes.size(), 3u);
}

TEST(ParseEnsembleTest, SelfChildIsCycle) {
  const ParseError e =
      ExpectParseError(Replace(kStump, "\"left\": 1", "\"left\": 0"), true);
  EXPECT_NE(std::string(e.what()).find("cycle"), std::string::npos)
      << e.what();
}

TEST(ParseEnsembleTest, FeatureOutOfRange) {
  std::string text = Replace(kStump, "\"n_features\": 1", "\"n_features\": 2");
  text = Replace(text, "[[0, 1]]", "[[0, 1], [0, 1]]");
  text = Replace(text, "\"feature\": 0", "\"feature\": 5");
  const ParseError e = ExpectParseError(text, true);
  EXPECT_NE(std::string(e.what()).find("range"), std::string::npos)
      << e.what();
}

TEST(ParseModelTest, Dispatches) {
  EXPECT_TRUE(ParseModel(kMinimalNet).is_network());
  EXPECT_FALSE(ParseModel(kStump).is_network());
  EXPECT_THROW(ParseModel("{}"), ParseError);
}

TEST(ReadModelFileTest, MissingFileIsParseError) {
  EXPECT_THROW(ReadModelFile("/nonexistent/model.json"), ParseError);
}

TEST(WriteNetworkTest, RoundTripMinimal) {
  const NetworkDefinition net = ParseNetwork(kMinimalNet).network();
  EXPECT_EQ(ParseNetwork(WriteNetwork(net)).network(), net);
}

TEST(WriteNetworkTest, RoundTripConvKeepsStrides) {
  const NetworkDefinition net =
      ReadModelFile(testing::ModelPath("conv_relu.json")).network();
  ASSERT_FALSE(net.layers[0].is_dense());
  NetworkDefinition strided = net;
  Conv2dLayer& conv = std::get<Conv2dLayer>(strided.layers[0].op);
  conv.stride_h = 1;
  conv.stride_w = 2;
  conv.kernel_w = 1;
  conv.kernel = {0.5, -0.5};
  DenseLayer& head = std::get<DenseLayer>(strided.layers[1].op);
  head.in_size = 4;
  ValidateNetwork(strided);
  EXPECT_EQ(ParseNetwork(WriteNetwork(strided)).network(), strided);
  EXPECT_EQ(ParseNetwork(WriteNetwork(net)).network(), net);
}

TEST(WriteNetworkTest, RoundTripScalingBitExact) {
  NetworkDefinition net = ParseNetwork(kMinimalNet).network();
  net.scaling = OffsetScaling{{0.1 + 0.2}, {1.0 / 3.0}, {-1e-17}, {6.02e23}};
  const NetworkDefinition back = ParseNetwork(WriteNetwork(net)).network();
  ASSERT_TRUE(back.scaling.has_value());
  EXPECT_EQ(*back.scaling, *net.scaling);
}

TEST(WriteNetworkTest, RandomRoundTrip) {
  testing::Rng rng(5);
  testing::NetGenOptions options;
  options.conv_probability = 0.3;
  options.scaling_probability = 0.5;
  for (int trial = 0; trial < 100; ++trial) {
    options.family = trial % 2 ? testing::NetFamily::kSmooth
                               : testing::NetFamily::kRelu;
    const NetworkDefinition net = testing::RandomNetwork(rng, options);
    EXPECT_EQ(ParseNetwork(WriteNetwork(net)).network(), net);
  }
}

TEST(WriteEnsembleTest, RandomRoundTrip) {
  testing::Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const TreeEnsemble ens = testing::RandomEnsemble(rng, {});
    EXPECT_EQ(ParseEnsemble(WriteEnsemble(ens)).ensemble(), ens);
  }
}

TEST(BundledModelsTest, AllParse) {
  for (const char* name :
       {"abs_net.json", "relu_neuron.json", "scaled_relu.json",
        "conv_relu.json", "smooth_net.json", "stump.json", "gbt_small.json",
        "classifier_4x3.json"}) {
    EXPECT_NO_THROW(ReadModelFile(testing::ModelPath(name))) << name;
  }
}

}  // namespace
}  // namespace surrogate
