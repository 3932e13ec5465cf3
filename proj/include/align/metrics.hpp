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

#ifndef ALIGN_METRICS_HPP_
#define ALIGN_METRICS_HPP_

#include <span>
#include <string>
#include <vector>

#include "align/error.hpp"

namespace align {

struct ScoredBinarySet {
  std::vector<double> scores;
  std::vector<int> labels;  // 0 or 1; both classes must be present for AUC
};

struct CorrelationTriple {
  double pearson = 0.0;
  double spearman = 0.0;
  double kendall = 0.0;
};

enum class KendallVariant { kTauB, kTauA };

// Fraction of exact matches.
template <typename T>
double accuracy(const std::vector<T>& predictions, const std::vector<T>& golds) {
  if (predictions.size() != golds.size())
    throw Error(ErrorCode::kLengthMismatch, "accuracy: length mismatch");
  if (predictions.empty()) throw Error(ErrorCode::kEmpty, "accuracy: empty");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i)
    if (predictions[i] == golds[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

// Pearson on raw values, Spearman as Pearson on average ranks (ties get the
// mean rank), Kendall tau-b with tie corrections (tau-a on request).
CorrelationTriple correlations(std::span<const double> x,
                               std::span<const double> y,
                               KendallVariant kendall = KendallVariant::kTauB);

// ROC AUC via the rank formulation, equal to the pairwise Mann-Whitney
// statistic: P(score_pos > score_neg) with ties counted one half.
double roc_auc(std::span<const double> scores, std::span<const int> labels);
double roc_auc(const ScoredBinarySet& data);

// SQuAD answer normalization: lowercase, strip punctuation, drop articles
// (a/an/the), collapse whitespace.
std::string squad_normalize(const std::string& text);

inline constexpr const char* kNoAnswerSentinel = "unanswerable";

struct SquadScore {
  int exact_match = 0;  // 0 or 1
  double f1 = 0.0;
};

// EM = 1 iff the normalized prediction equals any normalized gold; F1 is the
// max over golds of token-multiset F1. With no golds (unanswerable), both are
// 1 iff the normalized prediction is empty or the no-answer sentinel.
SquadScore squad_scores(const std::string& prediction,
                        std::span<const std::string> gold_answers,
                        const std::string& sentinel = kNoAnswerSentinel);

}  // namespace align

#endif  // ALIGN_METRICS_HPP_
