// Copyright 2026 The textalign Authors
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
//
// Builds a tiny random-weight alignment checkpoint in the interchange format
// the engine consumes: embed token ids, mean-pool, one tanh layer, and three
// linear heads (3 logits, 2 logits, sigmoid scalar).

#ifndef ALIGN_TESTS_MODEL_FIXTURE_HPP_
#define ALIGN_TESTS_MODEL_FIXTURE_HPP_

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "align/rng.hpp"
#include "onnx.pb.h"

namespace align::testing {

inline const std::vector<std::string>& fixture_words() {
  static const std::vector<std::string> kWords = {
      "the",  "a",     "of",    "and",   "to",    "in",   "is",    "was",
      "city", "river", "north", "south", "east",  "west", "first", "second",
      "king", "queen", "built", "found", "large", "small", "old",  "new",
      "house", "water", "green", "blue",  "stone", "road", "bridge", "tower",
      "year", "people", "land",  "sea",   "long",  "short", "high", "low"};
  return kWords;
}

inline void write_fixture_tokenizer(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "{\n  \"type\": \"whitespace\",\n  \"lowercase\": true,\n"
      << "  \"start_token\": \"<s>\",\n  \"sep_token\": \"<sep>\",\n"
      << "  \"end_token\": \"</s>\",\n  \"unk_token\": \"<unk>\",\n"
      << "  \"vocab\": {\n";
  out << "    \"<s>\": 0,\n    \"<sep>\": 1,\n    \"</s>\": 2,\n"
      << "    \"<unk>\": 3";
  const auto& words = fixture_words();
  for (std::size_t i = 0; i < words.size(); ++i)
    out << ",\n    \"" << words[i] << "\": " << (i + 4);
  out << "\n  }\n}\n";
}

inline onnx::TensorProto* add_initializer(onnx::GraphProto* graph,
                                          const std::string& name,
                                          const std::vector<std::int64_t>& dims) {
  onnx::TensorProto* tensor = graph->add_initializer();
  tensor->set_name(name);
  tensor->set_data_type(onnx::TensorProto::FLOAT);
  for (std::int64_t d : dims) tensor->add_dims(d);
  return tensor;
}

inline void fill_random(onnx::TensorProto* tensor, SplitMix64* rng,
                        std::size_t count, float scale) {
  for (std::size_t i = 0; i < count; ++i)
    tensor->add_float_data(
        static_cast<float>((rng->uniform() * 2.0 - 1.0) * scale));
}

inline onnx::NodeProto* add_node(onnx::GraphProto* graph, const std::string& op,
                                 const std::vector<std::string>& inputs,
                                 const std::string& output) {
  onnx::NodeProto* node = graph->add_node();
  node->set_op_type(op);
  node->set_name(op + "_" + output);
  for (const std::string& input : inputs) node->add_input(input);
  node->add_output(output);
  return node;
}

inline void write_fixture_model(const std::string& path,
                                std::uint64_t seed = 2022) {
  const auto vocab_size =
      static_cast<std::int64_t>(fixture_words().size() + 4);
  const std::int64_t hidden = 8;

  onnx::ModelProto model;
  model.set_ir_version(8);
  model.set_producer_name("textalign-fixture");
  onnx::OperatorSetIdProto* opset = model.add_opset_import();
  opset->set_domain("");
  opset->set_version(13);

  onnx::GraphProto* graph = model.mutable_graph();
  graph->set_name("alignment_probe");

  onnx::ValueInfoProto* input = graph->add_input();
  input->set_name("tokens");
  auto* input_type = input->mutable_type()->mutable_tensor_type();
  input_type->set_elem_type(onnx::TensorProto::INT64);
  input_type->mutable_shape()->add_dim()->set_dim_param("sequence");

  SplitMix64 rng(seed);
  fill_random(add_initializer(graph, "embedding", {vocab_size, hidden}), &rng,
              static_cast<std::size_t>(vocab_size * hidden), 1.0f);
  fill_random(add_initializer(graph, "w_hidden", {hidden, hidden}), &rng,
              static_cast<std::size_t>(hidden * hidden), 0.5f);
  fill_random(add_initializer(graph, "b_hidden", {hidden}), &rng,
              static_cast<std::size_t>(hidden), 0.1f);
  fill_random(add_initializer(graph, "w_3way", {hidden, 3}), &rng,
              static_cast<std::size_t>(hidden * 3), 1.0f);
  fill_random(add_initializer(graph, "b_3way", {3}), &rng, 3, 0.1f);
  fill_random(add_initializer(graph, "w_bin", {hidden, 2}), &rng,
              static_cast<std::size_t>(hidden * 2), 1.0f);
  fill_random(add_initializer(graph, "b_bin", {2}), &rng, 2, 0.1f);
  fill_random(add_initializer(graph, "w_reg", {hidden, 1}), &rng,
              static_cast<std::size_t>(hidden), 1.0f);
  fill_random(add_initializer(graph, "b_reg", {1}), &rng, 1, 0.1f);

  onnx::NodeProto* gather = add_node(graph, "Gather", {"embedding", "tokens"},
                                     "embedded");
  onnx::AttributeProto* axis = gather->add_attribute();
  axis->set_name("axis");
  axis->set_type(onnx::AttributeProto::INT);
  axis->set_i(0);

  onnx::NodeProto* pool = add_node(graph, "ReduceMean", {"embedded"}, "pooled");
  onnx::AttributeProto* axes = pool->add_attribute();
  axes->set_name("axes");
  axes->set_type(onnx::AttributeProto::INTS);
  axes->add_ints(0);
  onnx::AttributeProto* keepdims = pool->add_attribute();
  keepdims->set_name("keepdims");
  keepdims->set_type(onnx::AttributeProto::INT);
  keepdims->set_i(0);

  add_node(graph, "MatMul", {"pooled", "w_hidden"}, "hidden_raw");
  add_node(graph, "Add", {"hidden_raw", "b_hidden"}, "hidden_biased");
  add_node(graph, "Tanh", {"hidden_biased"}, "hidden");

  add_node(graph, "MatMul", {"hidden", "w_3way"}, "logits3_raw");
  add_node(graph, "Add", {"logits3_raw", "b_3way"}, "logits_3way");
  add_node(graph, "MatMul", {"hidden", "w_bin"}, "logits2_raw");
  add_node(graph, "Add", {"logits2_raw", "b_bin"}, "logits_bin");
  add_node(graph, "MatMul", {"hidden", "w_reg"}, "reg_raw");
  add_node(graph, "Add", {"reg_raw", "b_reg"}, "reg_biased");
  add_node(graph, "Sigmoid", {"reg_biased"}, "regression");

  for (const char* name : {"logits_3way", "logits_bin", "regression"})
    graph->add_output()->set_name(name);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  if (!model.SerializeToOstream(&out))
    throw std::runtime_error("failed to serialize " + path);
}

}  // namespace align::testing

#endif  // ALIGN_TESTS_MODEL_FIXTURE_HPP_
