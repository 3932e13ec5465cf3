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

#ifndef ALIGN_BENCHMARK_HPP_
#define ALIGN_BENCHMARK_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "align/dataset.hpp"
#include "align/scorer.hpp"
#include "align/segment.hpp"

namespace align {

struct ScorerSpec {
  enum class Kind { kLexical, kModel } kind = Kind::kLexical;
  std::string model_path;
  std::string tokenizer_path;
  std::size_t max_tokens = 512;
};

// Minimum model budget: anything smaller cannot hold a chunk, a sentence,
// and the reserved special tokens.
inline constexpr std::size_t kMinModelBudget = 16;

std::unique_ptr<PairScorer> make_scorer(const ScorerSpec& spec);

struct RunConfig {
  ScorerSpec scorer;
  std::optional<Head> head;  // per-task default when unset
  AggregationMode agg = AggregationMode::kMeanMax;
  DatasetKind task = DatasetKind::kNli;
  std::string input_path;
  std::string output_path;  // empty -> stdout (CLI concern)
  std::uint64_t seed = 2022;
  std::size_t jobs = 1;
  std::optional<double> threshold;  // binary decision cut / verifier threshold

  void validate() const;
};

struct EvalReport {
  std::string dataset_id;
  std::string task;
  std::size_t example_count = 0;
  std::vector<std::pair<std::string, double>> metrics;  // fixed order per task
  double duration_ms = 0.0;
  RunConfig config;  // echoed into the serialized report
};

// Serialized form; identical config and inputs give byte-identical text
// except for the duration_ms field. Execution-only settings (jobs, output
// path) are not echoed.
std::string report_to_json(const EvalReport& report);

// Scores a dataset with the configured scorer and reports the task's metric
// vocabulary: nli/pair accuracy, sts/geneval correlations (plus AUC for
// binary geneval labels), mcq/coref solver accuracy, qa EM/F1/AUC through
// the answerability verifier.
EvalReport run_benchmark(const RunConfig& config);

Head head_from_string(const std::string& name);
const char* head_flag_name(Head head);

}  // namespace align

#endif  // ALIGN_BENCHMARK_HPP_
