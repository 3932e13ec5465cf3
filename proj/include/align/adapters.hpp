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

#ifndef ALIGN_ADAPTERS_HPP_
#define ALIGN_ADAPTERS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "align/scorer.hpp"
#include "align/segment.hpp"
#include "align/types.hpp"

namespace align {

// Provenance tag of an adapted example.
enum class TaskTag {
  kNli,
  kFactVerification,
  kSts,
  kParaphrase,
  kIr,
  kQa,
  kCoref,
  kSummarization,
  kConsistency,
};

const char* to_string(TaskTag tag);

// A (x1, x2, target) triple in unified alignment format.
struct AdaptedExample {
  TextPair pair;
  Target target;
  TaskTag task;
  std::string id;
};

struct McqSample {
  std::string context;
  std::string question;
  std::vector<std::string> choices;  // >= 2
  std::size_t answer_index = 0;
  std::string id;
};

struct QaSample {
  std::string context;
  std::string question;
  std::vector<std::string> gold_answers;  // empty iff unanswerable
  bool answerable = false;
  std::optional<std::string> qa_prediction;
  std::string id;

  void validate() const;  // answerable <=> gold_answers non-empty
};

struct CorefSample {
  std::string context;
  std::size_t pronoun_begin = 0;  // character interval [begin, end)
  std::size_t pronoun_end = 0;
  std::vector<std::string> candidates;  // >= 2
  std::size_t answer_index = 0;
  std::string id;
};

// NLI / fact verification: entail -> ALIGNED, contradict -> CONTRADICT,
// neutral -> NEUTRAL. Unrecognized labels raise UNKNOWN_LABEL.
AdaptedExample adapt_three_way(const std::string& premise,
                               const std::string& hypothesis,
                               const std::string& label,
                               TaskTag task = TaskTag::kNli,
                               const std::string& id = "");

// STS: rescale raw_score from [scale_min, scale_max] to a [0, 1] regression
// target.
AdaptedExample adapt_sts(const std::string& sentence1,
                         const std::string& sentence2, double raw_score,
                         double scale_min, double scale_max,
                         const std::string& id = "");

// Paraphrase / IR / summarization: document or source as x1, the candidate
// as x2, BINARY target from the positive flag.
AdaptedExample adapt_binary_pair(const std::string& x1, const std::string& x2,
                                 bool positive, TaskTag task,
                                 const std::string& id = "");

// One pair per choice: x2 = question + " " + choice; the gold choice is
// ALIGNED, the rest NOT_ALIGNED.
std::vector<AdaptedExample> build_mcq_pairs(const McqSample& sample);

// Argmax over choices of aggregate_align(context, question + " " + choice).
// Ties break to the lowest index.
std::size_t solve_mcq(const PairScorer& scorer, const McqSample& sample,
                      Head head = Head::kBinAligned,
                      AggregationMode mode = AggregationMode::kMeanMax,
                      std::size_t jobs = 1);

// x2 = question + " " + candidate_answer; ALIGNED iff the sample is
// answerable and the candidate matches a gold answer after SQuAD
// normalization.
AdaptedExample adapt_answerability(const QaSample& sample,
                                   const std::string& candidate_answer);

// Replaces the pronoun span with each candidate and picks the candidate
// whose substituted context aligns best with the original. Ties break to
// the lowest index.
std::size_t solve_coref(const PairScorer& scorer, const CorefSample& sample,
                        Head head = Head::kBinAligned,
                        AggregationMode mode = AggregationMode::kMeanMax,
                        std::size_t jobs = 1);

// Factual consistency of a system output against its context:
// aggregate_align on the 3-way ALIGNED head.
double score_consistency(const PairScorer& scorer, const std::string& context,
                         const std::string& output,
                         AggregationMode mode = AggregationMode::kMeanMax,
                         std::size_t jobs = 1);

inline constexpr const char* kMaskSentinel = "<mask>";

// Synthetic-negative plan: ceil(mask_fraction * N) distinct token positions
// drawn without replacement from the seeded generator, each replaced by the
// mask sentinel in masked_text.
struct MaskPlan {
  std::vector<std::string> tokens;            // original tokens
  std::vector<std::size_t> masked_positions;  // ascending
  std::string masked_text;
};

MaskPlan mask_negative_plan(const std::string& text, double mask_fraction,
                            std::uint64_t rng_seed);
inline MaskPlan mask_negative_plan(const std::string& text,
                                   std::uint64_t rng_seed) {
  return mask_negative_plan(text, 0.25, rng_seed);
}

// Infilling hook: receives the plan and one masked position, returns the
// replacement token. The default hook samples a token from the document's
// own distinct vocabulary (desk-scale stand-in for a masked-LM infiller).
using MaskFiller =
    std::function<std::string(const MaskPlan& plan, std::size_t position)>;

std::string infill_masks(const MaskPlan& plan, const MaskFiller& filler);
std::string infill_masks(const MaskPlan& plan, std::uint64_t rng_seed);

}  // namespace align

#endif  // ALIGN_ADAPTERS_HPP_
