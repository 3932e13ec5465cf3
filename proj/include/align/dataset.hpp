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

#ifndef ALIGN_DATASET_HPP_
#define ALIGN_DATASET_HPP_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "align/adapters.hpp"

namespace align {

// Input dataset kinds understood by the CLI. Each has a JSONL schema (one
// UTF-8 object per line); see the README for the field lists.
enum class DatasetKind { kNli, kSts, kPair, kMcq, kQa, kCoref, kGeneval };

DatasetKind dataset_kind_from_string(const std::string& name);
const char* to_string(DatasetKind kind);

struct NliRow {
  std::string premise, hypothesis, label, id;
};

struct StsRow {
  std::string sentence1, sentence2, id;
  double score = 0.0, scale_min = 0.0, scale_max = 1.0;
};

struct PairRow {
  std::string x1, x2, id;
  bool positive = false;
  TaskTag task = TaskTag::kParaphrase;  // paraphrase | ir | summarization
};

struct GenevalRow {
  std::string context, output, id;
  double human_score = 0.0;
};

using DatasetRows =
    std::variant<std::vector<NliRow>, std::vector<StsRow>,
                 std::vector<PairRow>, std::vector<McqSample>,
                 std::vector<QaSample>, std::vector<CorefSample>,
                 std::vector<GenevalRow>>;

// Parses and validates a JSONL dataset. Rows get stable ids: the "id" field
// when present, otherwise the 1-based line number. Malformed JSON raises
// PARSE_ERROR with the line number; missing or mistyped fields raise
// SCHEMA_VIOLATION naming the field. An empty dataset raises EMPTY.
DatasetRows load_dataset(const std::string& path, DatasetKind kind);

std::size_t dataset_size(const DatasetRows& rows);

// Adapts loaded rows into unified alignment format (one or more adapted
// examples per row; mcq/coref expand per candidate, qa per gold answer plus
// the QA prediction when present).
std::vector<AdaptedExample> adapt_dataset(const DatasetRows& rows,
                                          DatasetKind kind);

}  // namespace align

#endif  // ALIGN_DATASET_HPP_
