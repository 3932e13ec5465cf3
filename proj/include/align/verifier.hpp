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

#ifndef ALIGN_VERIFIER_HPP_
#define ALIGN_VERIFIER_HPP_

#include <span>
#include <string>

#include "align/adapters.hpp"
#include "align/metrics.hpp"
#include "align/scorer.hpp"

namespace align {

struct VerifierConfig {
  double threshold = 0.5;             // in [0, 1]
  Head head = Head::kBinAligned;
  std::string sentinel = kNoAnswerSentinel;
};

struct VerifiedPrediction {
  std::string answer;  // QA prediction, or the sentinel when overridden
  double p_unanswerable = 0.0;
};

// 1 - ALIGN(context, question + " " + candidate) on the binary ALIGNED head,
// mean-max aggregated.
double unanswerable_prob(const PairScorer& scorer, const QaSample& sample,
                         const std::string& candidate_answer,
                         Head head = Head::kBinAligned,
                         AggregationMode mode = AggregationMode::kMeanMax,
                         std::size_t jobs = 1);

struct DevPoint {
  QaSample sample;  // qa_prediction must be set
  double p_unanswerable = 0.0;
};

struct ThresholdResult {
  double threshold = 0.0;
  double f1 = 0.0;
};

// Scans candidate thresholds (0, 1, and midpoints between consecutive sorted
// distinct probabilities). Samples with p > tau answer the sentinel, others
// their QA prediction; the macro-averaged SQuAD F1 decides. Ties break to the
// lowest threshold.
ThresholdResult tune_threshold(std::span<const DevPoint> dev,
                               const std::string& sentinel = kNoAnswerSentinel);

// Overrides the QA prediction with the sentinel when the unanswerable
// probability strictly exceeds the threshold.
VerifiedPrediction verify_answer(const PairScorer& scorer,
                                 const QaSample& sample,
                                 const std::string& qa_prediction,
                                 const VerifierConfig& config,
                                 AggregationMode mode = AggregationMode::kMeanMax,
                                 std::size_t jobs = 1);

// AUC convention for systems without probabilities: 1 if the prediction
// abstains (sentinel or empty after normalization), 0 if it answers.
double baseline_unanswerable_score(const std::string& prediction,
                                   const std::string& sentinel = kNoAnswerSentinel);

}  // namespace align

#endif  // ALIGN_VERIFIER_HPP_
