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

#ifndef ALIGN_MODEL_SCORER_HPP_
#define ALIGN_MODEL_SCORER_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "align/scorer.hpp"

namespace align {

// Word-level tokenizer defined by a JSON file:
//   {"type": "whitespace", "lowercase": bool, "vocab": {token: id, ...},
//    "unk_token": "...", "start_token": "...", "sep_token": "...",
//    "end_token": "..."}
// All special tokens must be present in the vocab.
class VocabTokenizer {
 public:
  static VocabTokenizer load(const std::string& path);

  std::vector<std::string> tokens(const std::string& text) const;
  std::vector<std::int64_t> ids(const std::string& text) const;

  std::int64_t start_id() const { return start_id_; }
  std::int64_t sep_id() const { return sep_id_; }
  std::int64_t end_id() const { return end_id_; }
  std::size_t vocab_size() const { return vocab_.size(); }

 private:
  std::unordered_map<std::string, std::int64_t> vocab_;
  std::int64_t unk_id_ = 0;
  std::int64_t start_id_ = 0;
  std::int64_t sep_id_ = 0;
  std::int64_t end_id_ = 0;
  bool lowercase_ = true;
};

// Neural backend behind the PairScorer contract. The model is an ONNX file
// restricted to a small operator subset (Gather, MatMul, Add, Mul,
// ReduceMean, Relu, Tanh, Sigmoid, Identity); it takes one int64 token-id
// tensor and produces three outputs with 3, 2, and 1 elements. The engine
// feeds <start> x1 <sep> x2 <end>, truncated to the declared budget, applies
// softmax to the two logit vectors, and clamps the scalar to [0, 1].
// Failures loading or running the model surface as BACKEND_FAILURE.
class ModelScorer final : public PairScorer {
 public:
  ModelScorer(const std::string& model_path, const std::string& tokenizer_path,
              std::size_t max_tokens);
  ~ModelScorer() override;

  AlignmentScore score(const TextPair& pair) const override;
  std::size_t token_budget() const override { return max_tokens_; }
  std::vector<std::string> tokenize(const std::string& text) const override;
  std::size_t pair_token_count(const TextPair& pair) const override;

  ModelScorer(const ModelScorer&) = delete;
  ModelScorer& operator=(const ModelScorer&) = delete;

 private:
  struct Graph;
  std::unique_ptr<Graph> graph_;
  VocabTokenizer tokenizer_;
  std::size_t max_tokens_;
};

}  // namespace align

#endif  // ALIGN_MODEL_SCORER_HPP_
