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

#include "align/model_scorer.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "align/error.hpp"
#include "align/tokenize.hpp"
#include "onnx.pb.h"

namespace align {

namespace {

using json = nlohmann::json;

[[noreturn]] void backend_fail(const std::string& what) {
  throw Error(ErrorCode::kBackendFailure, what);
}

// Minimal dense tensor: float32 or int64, row-major.
struct Tensor {
  std::vector<std::int64_t> dims;
  std::vector<float> floats;
  std::vector<std::int64_t> ints;
  bool is_int = false;

  std::size_t numel() const {
    std::size_t n = 1;
    for (std::int64_t d : dims) n *= static_cast<std::size_t>(d);
    return n;
  }
};

Tensor from_proto(const onnx::TensorProto& proto) {
  Tensor t;
  t.dims.assign(proto.dims().begin(), proto.dims().end());
  switch (proto.data_type()) {
    case onnx::TensorProto::FLOAT: {
      if (!proto.raw_data().empty()) {
        const std::string& raw = proto.raw_data();
        t.floats.resize(raw.size() / sizeof(float));
        std::memcpy(t.floats.data(), raw.data(), raw.size());
      } else {
        t.floats.assign(proto.float_data().begin(), proto.float_data().end());
      }
      break;
    }
    case onnx::TensorProto::INT64: {
      t.is_int = true;
      if (!proto.raw_data().empty()) {
        const std::string& raw = proto.raw_data();
        t.ints.resize(raw.size() / sizeof(std::int64_t));
        std::memcpy(t.ints.data(), raw.data(), raw.size());
      } else {
        t.ints.assign(proto.int64_data().begin(), proto.int64_data().end());
      }
      break;
    }
    default:
      backend_fail("model: tensor '" + proto.name() +
                   "' has unsupported data type " +
                   std::to_string(proto.data_type()));
  }
  std::size_t expected = t.numel();
  std::size_t actual = t.is_int ? t.ints.size() : t.floats.size();
  if (expected != actual)
    backend_fail("model: tensor '" + proto.name() + "' dims disagree with data");
  return t;
}

struct NodeAttrs {
  std::map<std::string, std::int64_t> ints;
  std::map<std::string, std::vector<std::int64_t>> int_lists;
};

struct Node {
  std::string op;
  std::string name;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  NodeAttrs attrs;
};

}  // namespace

struct ModelScorer::Graph {
  std::map<std::string, Tensor> initializers;
  std::vector<Node> nodes;
  std::string input_name;
  std::vector<std::string> output_names;

  // Evaluates the graph on one token-id sequence; all state is local, so
  // concurrent calls are safe.
  std::vector<Tensor> run(const std::vector<std::int64_t>& ids) const;
};

namespace {

const Tensor& resolve(const std::map<std::string, Tensor>& env,
                      const std::string& name, const Node& node) {
  auto it = env.find(name);
  if (it == env.end())
    backend_fail("model: node '" + node.name + "' (" + node.op +
                 ") reads undefined tensor '" + name + "'");
  return it->second;
}

Tensor op_gather(const Tensor& data, const Tensor& indices) {
  if (data.is_int || data.dims.size() != 2 || !indices.is_int)
    backend_fail("model: Gather expects float [V,H] data and int64 indices");
  std::int64_t vocab = data.dims[0];
  std::int64_t width = data.dims[1];

  Tensor out;
  out.dims = indices.dims;
  out.dims.push_back(width);
  out.floats.reserve(indices.ints.size() * static_cast<std::size_t>(width));
  for (std::int64_t id : indices.ints) {
    if (id < 0 || id >= vocab)
      backend_fail("model: Gather index " + std::to_string(id) +
                   " outside embedding table of size " + std::to_string(vocab));
    auto offset = static_cast<std::size_t>(id * width);
    out.floats.insert(out.floats.end(), data.floats.begin() + offset,
                      data.floats.begin() + offset + width);
  }
  return out;
}

Tensor op_matmul(const Tensor& a, const Tensor& b, const Node& node) {
  if (a.is_int || b.is_int || b.dims.size() != 2)
    backend_fail("model: MatMul supports float [M,K]x[K,N] or [K]x[K,N]");
  std::int64_t k = b.dims[0], cols = b.dims[1];
  bool vector_lhs = a.dims.size() == 1;
  std::int64_t rows = vector_lhs ? 1 : a.dims[0];
  std::int64_t lhs_k = vector_lhs ? a.dims[0] : a.dims[1];
  if (a.dims.size() > 2 || lhs_k != k)
    backend_fail("model: MatMul shape mismatch in node '" + node.name + "'");

  Tensor out;
  out.dims = vector_lhs ? std::vector<std::int64_t>{cols}
                        : std::vector<std::int64_t>{rows, cols};
  out.floats.assign(static_cast<std::size_t>(rows * cols), 0.0f);
  for (std::int64_t i = 0; i < rows; ++i)
    for (std::int64_t p = 0; p < k; ++p) {
      float lhs = a.floats[static_cast<std::size_t>(i * k + p)];
      if (lhs == 0.0f) continue;
      for (std::int64_t j = 0; j < cols; ++j)
        out.floats[static_cast<std::size_t>(i * cols + j)] +=
            lhs * b.floats[static_cast<std::size_t>(p * cols + j)];
    }
  return out;
}

template <typename BinaryOp>
Tensor op_elementwise_pair(const Tensor& a, const Tensor& b, const Node& node,
                           BinaryOp op) {
  if (a.is_int || b.is_int)
    backend_fail("model: arithmetic ops expect float tensors");
  Tensor out;
  if (a.dims == b.dims) {
    out.dims = a.dims;
    out.floats.resize(a.floats.size());
    for (std::size_t i = 0; i < a.floats.size(); ++i)
      out.floats[i] = op(a.floats[i], b.floats[i]);
    return out;
  }
  // Row broadcast: [M,N] (op) [N].
  if (a.dims.size() == 2 && b.dims.size() == 1 && a.dims[1] == b.dims[0]) {
    out.dims = a.dims;
    out.floats.resize(a.floats.size());
    auto cols = static_cast<std::size_t>(a.dims[1]);
    for (std::size_t i = 0; i < a.floats.size(); ++i)
      out.floats[i] = op(a.floats[i], b.floats[i % cols]);
    return out;
  }
  backend_fail("model: incompatible shapes in node '" + node.name + "'");
}

Tensor op_reduce_mean(const Tensor& input, const Node& node,
                      const std::map<std::string, Tensor>& env) {
  if (input.is_int || input.dims.size() != 2)
    backend_fail("model: ReduceMean supports float [T,H] over axis 0");

  std::vector<std::int64_t> axes;
  if (auto it = node.attrs.int_lists.find("axes");
      it != node.attrs.int_lists.end()) {
    axes = it->second;
  } else if (node.inputs.size() > 1) {
    axes = resolve(env, node.inputs[1], node).ints;  // opset >= 18 form
  }
  if (axes != std::vector<std::int64_t>{0})
    backend_fail("model: ReduceMean requires axes=[0]");
  std::int64_t keepdims = 1;
  if (auto it = node.attrs.ints.find("keepdims"); it != node.attrs.ints.end())
    keepdims = it->second;

  auto rows = static_cast<std::size_t>(input.dims[0]);
  auto cols = static_cast<std::size_t>(input.dims[1]);
  Tensor out;
  out.dims = keepdims ? std::vector<std::int64_t>{1, input.dims[1]}
                      : std::vector<std::int64_t>{input.dims[1]};
  out.floats.assign(cols, 0.0f);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      out.floats[j] += input.floats[i * cols + j];
  for (std::size_t j = 0; j < cols; ++j)
    out.floats[j] /= static_cast<float>(rows);
  return out;
}

template <typename UnaryOp>
Tensor op_unary(const Tensor& input, UnaryOp op) {
  Tensor out = input;
  for (float& v : out.floats) v = op(v);
  return out;
}

}  // namespace

std::vector<Tensor> ModelScorer::Graph::run(
    const std::vector<std::int64_t>& ids) const {
  std::map<std::string, Tensor> env = initializers;
  Tensor input;
  input.is_int = true;
  input.dims = {static_cast<std::int64_t>(ids.size())};
  input.ints = ids;
  env[input_name] = std::move(input);

  for (const Node& node : nodes) {
    Tensor result;
    if (node.op == "Gather") {
      result = op_gather(resolve(env, node.inputs[0], node),
                         resolve(env, node.inputs[1], node));
    } else if (node.op == "MatMul") {
      result = op_matmul(resolve(env, node.inputs[0], node),
                         resolve(env, node.inputs[1], node), node);
    } else if (node.op == "Add") {
      result = op_elementwise_pair(resolve(env, node.inputs[0], node),
                                   resolve(env, node.inputs[1], node), node,
                                   [](float a, float b) { return a + b; });
    } else if (node.op == "Mul") {
      result = op_elementwise_pair(resolve(env, node.inputs[0], node),
                                   resolve(env, node.inputs[1], node), node,
                                   [](float a, float b) { return a * b; });
    } else if (node.op == "ReduceMean") {
      result = op_reduce_mean(resolve(env, node.inputs[0], node), node, env);
    } else if (node.op == "Relu") {
      result = op_unary(resolve(env, node.inputs[0], node),
                        [](float v) { return v > 0.0f ? v : 0.0f; });
    } else if (node.op == "Tanh") {
      result = op_unary(resolve(env, node.inputs[0], node),
                        [](float v) { return std::tanh(v); });
    } else if (node.op == "Sigmoid") {
      result = op_unary(resolve(env, node.inputs[0], node), [](float v) {
        return 1.0f / (1.0f + std::exp(-v));
      });
    } else if (node.op == "Identity") {
      result = resolve(env, node.inputs[0], node);
    } else {
      backend_fail("model: unsupported op '" + node.op + "'");
    }
    if (node.outputs.empty())
      backend_fail("model: node '" + node.name + "' has no output");
    env[node.outputs[0]] = std::move(result);
  }

  std::vector<Tensor> outputs;
  outputs.reserve(output_names.size());
  for (const std::string& name : output_names) {
    auto it = env.find(name);
    if (it == env.end())
      backend_fail("model: graph output '" + name + "' was never produced");
    outputs.push_back(it->second);
  }
  return outputs;
}

VocabTokenizer VocabTokenizer::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) backend_fail("tokenizer: cannot open " + path);
  json spec;
  try {
    in >> spec;
  } catch (const json::exception& e) {
    backend_fail("tokenizer: invalid JSON in " + path + ": " + e.what());
  }

  VocabTokenizer tok;
  try {
    if (spec.value("type", "whitespace") != std::string("whitespace"))
      backend_fail("tokenizer: only type 'whitespace' is supported");
    tok.lowercase_ = spec.value("lowercase", true);
    for (auto& [token, id] : spec.at("vocab").items())
      tok.vocab_[token] = id.get<std::int64_t>();

    auto special = [&](const char* key) {
      std::string token = spec.at(key).get<std::string>();
      auto it = tok.vocab_.find(token);
      if (it == tok.vocab_.end())
        backend_fail("tokenizer: special token '" + token +
                     "' missing from vocab");
      return it->second;
    };
    tok.unk_id_ = special("unk_token");
    tok.start_id_ = special("start_token");
    tok.sep_id_ = special("sep_token");
    tok.end_id_ = special("end_token");
  } catch (const json::exception& e) {
    backend_fail("tokenizer: bad schema in " + path + ": " + e.what());
  }
  return tok;
}

std::vector<std::string> VocabTokenizer::tokens(const std::string& text) const {
  return whitespace_tokens(lowercase_ ? to_lower(text) : text);
}

std::vector<std::int64_t> VocabTokenizer::ids(const std::string& text) const {
  std::vector<std::int64_t> out;
  for (const std::string& token : tokens(text)) {
    auto it = vocab_.find(token);
    out.push_back(it == vocab_.end() ? unk_id_ : it->second);
  }
  return out;
}

ModelScorer::ModelScorer(const std::string& model_path,
                         const std::string& tokenizer_path,
                         std::size_t max_tokens)
    : tokenizer_(VocabTokenizer::load(tokenizer_path)),
      max_tokens_(max_tokens) {
  std::ifstream in(model_path, std::ios::binary);
  if (!in) backend_fail("model: cannot open " + model_path);

  onnx::ModelProto model;
  if (!model.ParseFromIstream(&in))
    backend_fail("model: failed to parse " + model_path);
  if (!model.has_graph()) backend_fail("model: no graph in " + model_path);
  const onnx::GraphProto& graph = model.graph();

  graph_ = std::make_unique<Graph>();
  for (const onnx::TensorProto& init : graph.initializer())
    graph_->initializers[init.name()] = from_proto(init);

  for (const onnx::ValueInfoProto& input : graph.input()) {
    if (graph_->initializers.count(input.name())) continue;
    if (!graph_->input_name.empty())
      backend_fail("model: expected exactly one token-id input");
    graph_->input_name = input.name();
    if (input.has_type() && input.type().has_tensor_type()) {
      const auto& tensor_type = input.type().tensor_type();
      if (tensor_type.elem_type() != onnx::TensorProto::INT64)
        backend_fail("model: token-id input must be int64");
      if (tensor_type.has_shape() && tensor_type.shape().dim_size() != 1)
        backend_fail("model: token-id input must be rank 1");
    }
  }
  if (graph_->input_name.empty())
    backend_fail("model: graph declares no runtime input");

  for (const onnx::ValueInfoProto& output : graph.output())
    graph_->output_names.push_back(output.name());
  if (graph_->output_names.size() != 3)
    backend_fail("model: expected 3 outputs (3-way logits, binary logits, "
                 "regression scalar), got " +
                 std::to_string(graph_->output_names.size()));

  for (const onnx::NodeProto& proto : graph.node()) {
    Node node;
    node.op = proto.op_type();
    node.name = proto.name().empty() ? proto.op_type() : proto.name();
    node.inputs.assign(proto.input().begin(), proto.input().end());
    node.outputs.assign(proto.output().begin(), proto.output().end());
    for (const onnx::AttributeProto& attr : proto.attribute()) {
      if (attr.type() == onnx::AttributeProto::INT) {
        node.attrs.ints[attr.name()] = attr.i();
      } else if (attr.type() == onnx::AttributeProto::INTS) {
        node.attrs.int_lists[attr.name()] = {attr.ints().begin(),
                                             attr.ints().end()};
      }
    }
    graph_->nodes.push_back(std::move(node));
  }
}

ModelScorer::~ModelScorer() = default;

std::vector<std::string> ModelScorer::tokenize(const std::string& text) const {
  return tokenizer_.tokens(text);
}

std::size_t ModelScorer::pair_token_count(const TextPair& pair) const {
  // <start> x1 <sep> x2 <end>
  return count_tokens(pair.x1) + count_tokens(pair.x2) + 3;
}

AlignmentScore ModelScorer::score(const TextPair& pair) const {
  std::vector<std::int64_t> ids;
  std::vector<std::int64_t> x1_ids = tokenizer_.ids(pair.x1);
  std::vector<std::int64_t> x2_ids = tokenizer_.ids(pair.x2);
  ids.reserve(x1_ids.size() + x2_ids.size() + 3);
  ids.push_back(tokenizer_.start_id());
  ids.insert(ids.end(), x1_ids.begin(), x1_ids.end());
  ids.push_back(tokenizer_.sep_id());
  ids.insert(ids.end(), x2_ids.begin(), x2_ids.end());
  ids.push_back(tokenizer_.end_id());
  if (max_tokens_ != kUnlimited && ids.size() > max_tokens_)
    ids.resize(max_tokens_);
  if (ids.empty()) throw Error(ErrorCode::kEmptyText, "model: empty input");

  std::vector<Tensor> outputs = graph_->run(ids);
  if (outputs[0].numel() != 3 || outputs[1].numel() != 2 ||
      outputs[2].numel() != 1)
    backend_fail("model: outputs must have 3, 2, and 1 elements");

  auto softmax = [](const std::vector<float>& logits, auto& out) {
    double max_logit = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
      out[i] = std::exp(static_cast<double>(logits[i]) - max_logit);
      sum += out[i];
    }
    for (std::size_t i = 0; i < logits.size(); ++i) out[i] /= sum;
  };

  AlignmentScore score;
  softmax(outputs[0].floats, score.p3);
  softmax(outputs[1].floats, score.pbin);
  score.reg = std::clamp(static_cast<double>(outputs[2].floats[0]), 0.0, 1.0);
  return score;
}

}  // namespace align
