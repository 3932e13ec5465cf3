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

#include "align/adapters.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "align/error.hpp"
#include "align/metrics.hpp"
#include "align/rng.hpp"
#include "align/tokenize.hpp"

namespace align {

const char* to_string(TaskTag tag) {
  switch (tag) {
    case TaskTag::kNli: return "nli";
    case TaskTag::kFactVerification: return "fact_verification";
    case TaskTag::kSts: return "sts";
    case TaskTag::kParaphrase: return "paraphrase";
    case TaskTag::kIr: return "ir";
    case TaskTag::kQa: return "qa";
    case TaskTag::kCoref: return "coref";
    case TaskTag::kSummarization: return "summarization";
    case TaskTag::kConsistency: return "consistency";
  }
  return "?";
}

void QaSample::validate() const {
  if (answerable != !gold_answers.empty())
    throw Error(ErrorCode::kSchemaViolation,
                "qa sample " + id +
                    ": answerable flag must match gold_answers presence");
}

AdaptedExample adapt_three_way(const std::string& premise,
                               const std::string& hypothesis,
                               const std::string& label, TaskTag task,
                               const std::string& id) {
  if (premise.empty() || hypothesis.empty())
    throw Error(ErrorCode::kEmptyText, "adapt_three_way: empty text");

  Label3 mapped;
  if (label == "entail") {
    mapped = Label3::kAligned;
  } else if (label == "contradict") {
    mapped = Label3::kContradict;
  } else if (label == "neutral") {
    mapped = Label3::kNeutral;
  } else {
    throw Error(ErrorCode::kUnknownLabel,
                "adapt_three_way: unknown label '" + label + "'");
  }
  return AdaptedExample{TextPair{premise, hypothesis},
                        ThreeWayTarget{mapped}, task, id};
}

AdaptedExample adapt_sts(const std::string& sentence1,
                         const std::string& sentence2, double raw_score,
                         double scale_min, double scale_max,
                         const std::string& id) {
  if (!(scale_min < scale_max))
    throw Error(ErrorCode::kOutOfRange, "adapt_sts: scale_min >= scale_max");
  if (raw_score < scale_min || raw_score > scale_max)
    throw Error(ErrorCode::kOutOfRange,
                "adapt_sts: raw score outside its declared scale");
  double value = (raw_score - scale_min) / (scale_max - scale_min);
  return AdaptedExample{TextPair{sentence1, sentence2},
                        RegressionTarget{value}, TaskTag::kSts, id};
}

AdaptedExample adapt_binary_pair(const std::string& x1, const std::string& x2,
                                 bool positive, TaskTag task,
                                 const std::string& id) {
  if (x1.empty() || x2.empty())
    throw Error(ErrorCode::kEmptyText, "adapt_binary_pair: empty text");
  return AdaptedExample{
      TextPair{x1, x2},
      BinaryTarget{positive ? LabelBin::kAligned : LabelBin::kNotAligned},
      task, id};
}

std::vector<AdaptedExample> build_mcq_pairs(const McqSample& sample) {
  if (sample.choices.size() < 2)
    throw Error(ErrorCode::kSchemaViolation,
                "mcq sample " + sample.id + ": needs at least 2 choices");
  if (sample.answer_index >= sample.choices.size())
    throw Error(ErrorCode::kOutOfRange,
                "mcq sample " + sample.id + ": answer_index out of range");

  std::vector<AdaptedExample> out;
  out.reserve(sample.choices.size());
  for (std::size_t i = 0; i < sample.choices.size(); ++i) {
    if (sample.choices[i].empty())
      throw Error(ErrorCode::kEmptyText,
                  "mcq sample " + sample.id + ": empty choice");
    bool gold = i == sample.answer_index;
    out.push_back(AdaptedExample{
        TextPair{sample.context, sample.question + " " + sample.choices[i]},
        BinaryTarget{gold ? LabelBin::kAligned : LabelBin::kNotAligned},
        TaskTag::kQa, sample.id + "#" + std::to_string(i)});
  }
  return out;
}

std::size_t solve_mcq(const PairScorer& scorer, const McqSample& sample,
                      Head head, AggregationMode mode, std::size_t jobs) {
  std::vector<AdaptedExample> pairs = build_mcq_pairs(sample);
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    double value = aggregate_align(scorer, pairs[i].pair.x1, pairs[i].pair.x2,
                                   head, mode, jobs);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  return best;
}

AdaptedExample adapt_answerability(const QaSample& sample,
                                   const std::string& candidate_answer) {
  if (candidate_answer.empty())
    throw Error(ErrorCode::kEmptyText,
                "adapt_answerability: empty candidate answer");
  sample.validate();

  bool matches_gold = false;
  std::string candidate = squad_normalize(candidate_answer);
  for (const std::string& gold : sample.gold_answers)
    if (squad_normalize(gold) == candidate) matches_gold = true;

  bool aligned = sample.answerable && matches_gold;
  return AdaptedExample{
      TextPair{sample.context, sample.question + " " + candidate_answer},
      BinaryTarget{aligned ? LabelBin::kAligned : LabelBin::kNotAligned},
      TaskTag::kQa, sample.id};
}

std::size_t solve_coref(const PairScorer& scorer, const CorefSample& sample,
                        Head head, AggregationMode mode, std::size_t jobs) {
  if (sample.candidates.size() < 2)
    throw Error(ErrorCode::kSchemaViolation,
                "coref sample " + sample.id + ": needs at least 2 candidates");
  if (sample.pronoun_end > sample.context.size() ||
      sample.pronoun_begin >= sample.pronoun_end)
    throw Error(ErrorCode::kSpanOutOfBounds,
                "coref sample " + sample.id + ": pronoun span out of bounds");

  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t i = 0; i < sample.candidates.size(); ++i) {
    std::string substituted = sample.context;
    substituted.replace(sample.pronoun_begin,
                        sample.pronoun_end - sample.pronoun_begin,
                        sample.candidates[i]);
    double value =
        aggregate_align(scorer, sample.context, substituted, head, mode, jobs);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  return best;
}

double score_consistency(const PairScorer& scorer, const std::string& context,
                         const std::string& output, AggregationMode mode,
                         std::size_t jobs) {
  return aggregate_align(scorer, context, output, Head::kThreeWayAligned,
                         mode, jobs);
}

MaskPlan mask_negative_plan(const std::string& text, double mask_fraction,
                            std::uint64_t rng_seed) {
  MaskPlan plan;
  plan.tokens = whitespace_tokens(text);
  std::size_t n = plan.tokens.size();
  if (n < 4)
    throw Error(ErrorCode::kTooShort,
                "mask_negative_plan: need at least 4 tokens");
  if (mask_fraction <= 0.0 || mask_fraction > 1.0)
    throw Error(ErrorCode::kOutOfRange,
                "mask_negative_plan: mask_fraction outside (0, 1]");

  auto k = static_cast<std::size_t>(
      std::ceil(mask_fraction * static_cast<double>(n)));

  // Partial Fisher-Yates over the index array: first k slots are a uniform
  // sample without replacement.
  std::vector<std::size_t> indices(n);
  for (std::size_t i = 0; i < n; ++i) indices[i] = i;
  SplitMix64 rng(rng_seed);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.bounded(n - i));
    std::swap(indices[i], indices[j]);
  }
  plan.masked_positions.assign(indices.begin(),
                               indices.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(plan.masked_positions.begin(), plan.masked_positions.end());

  std::vector<std::string> masked = plan.tokens;
  for (std::size_t pos : plan.masked_positions) masked[pos] = kMaskSentinel;
  plan.masked_text = join_tokens(masked, 0, masked.size());
  return plan;
}

std::string infill_masks(const MaskPlan& plan, const MaskFiller& filler) {
  std::vector<std::string> filled = plan.tokens;
  for (std::size_t pos : plan.masked_positions)
    filled[pos] = filler(plan, pos);
  return join_tokens(filled, 0, filled.size());
}

std::string infill_masks(const MaskPlan& plan, std::uint64_t rng_seed) {
  // Distinct document vocabulary in first-occurrence order, so draws are
  // reproducible for a fixed seed.
  std::vector<std::string> vocab;
  std::set<std::string> seen;
  for (const std::string& token : plan.tokens)
    if (seen.insert(token).second) vocab.push_back(token);

  auto rng = std::make_shared<SplitMix64>(rng_seed);
  return infill_masks(plan, [vocab, rng](const MaskPlan&, std::size_t) {
    return vocab[static_cast<std::size_t>(rng->bounded(vocab.size()))];
  });
}

}  // namespace align
