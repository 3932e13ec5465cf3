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

#include "align/verifier.hpp"

#include <algorithm>
#include <vector>

#include "align/error.hpp"

namespace align {

double unanswerable_prob(const PairScorer& scorer, const QaSample& sample,
                         const std::string& candidate_answer, Head head,
                         AggregationMode mode, std::size_t jobs) {
  if (candidate_answer.empty())
    throw Error(ErrorCode::kEmptyText,
                "unanswerable_prob: empty candidate answer");
  double aligned =
      aggregate_align(scorer, sample.context,
                      sample.question + " " + candidate_answer, head, mode,
                      jobs);
  return 1.0 - aligned;
}

namespace {

double dev_f1_at_threshold(std::span<const DevPoint> dev, double threshold,
                           const std::string& sentinel) {
  double total = 0.0;
  for (const DevPoint& point : dev) {
    const std::string& answer = point.p_unanswerable > threshold
                                    ? sentinel
                                    : *point.sample.qa_prediction;
    total += squad_scores(answer, point.sample.gold_answers, sentinel).f1;
  }
  return total / static_cast<double>(dev.size());
}

}  // namespace

ThresholdResult tune_threshold(std::span<const DevPoint> dev,
                               const std::string& sentinel) {
  if (dev.empty())
    throw Error(ErrorCode::kEmptyDev, "tune_threshold: empty dev set");
  for (const DevPoint& point : dev) {
    point.sample.validate();
    if (!point.sample.qa_prediction)
      throw Error(ErrorCode::kSchemaViolation,
                  "tune_threshold: sample " + point.sample.id +
                      " has no qa_prediction");
  }

  std::vector<double> probs;
  probs.reserve(dev.size());
  for (const DevPoint& point : dev) probs.push_back(point.p_unanswerable);
  std::sort(probs.begin(), probs.end());
  probs.erase(std::unique(probs.begin(), probs.end()), probs.end());

  std::vector<double> candidates;
  candidates.push_back(0.0);
  for (std::size_t i = 0; i + 1 < probs.size(); ++i)
    candidates.push_back((probs[i] + probs[i + 1]) / 2.0);
  candidates.push_back(1.0);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  ThresholdResult best{candidates.front(), -1.0};
  for (double tau : candidates) {
    double f1 = dev_f1_at_threshold(dev, tau, sentinel);
    if (f1 > best.f1) best = ThresholdResult{tau, f1};
  }
  return best;
}

VerifiedPrediction verify_answer(const PairScorer& scorer,
                                 const QaSample& sample,
                                 const std::string& qa_prediction,
                                 const VerifierConfig& config,
                                 AggregationMode mode, std::size_t jobs) {
  if (qa_prediction.empty())
    throw Error(ErrorCode::kEmptyText, "verify_answer: empty qa_prediction");
  if (config.threshold < 0.0 || config.threshold > 1.0)
    throw Error(ErrorCode::kOutOfRange,
                "verify_answer: threshold outside [0, 1]");

  double p = unanswerable_prob(scorer, sample, qa_prediction, config.head,
                               mode, jobs);
  // Strict comparison: a probability exactly at the threshold passes through.
  if (p > config.threshold) return VerifiedPrediction{config.sentinel, p};
  return VerifiedPrediction{qa_prediction, p};
}

double baseline_unanswerable_score(const std::string& prediction,
                                   const std::string& sentinel) {
  std::string normalized = squad_normalize(prediction);
  return (normalized.empty() || normalized == squad_normalize(sentinel))
             ? 1.0
             : 0.0;
}

}  // namespace align
