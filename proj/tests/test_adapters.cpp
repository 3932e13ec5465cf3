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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "align/adapters.hpp"
#include "align/error.hpp"
#include "align/rng.hpp"
#include "align/tokenize.hpp"

using namespace align;

TEST_CASE("adapt_three_way maps entail/contradict/neutral") {
  AdaptedExample entail = adapt_three_way("I have been in Kentucky",
                                          "I have been in the US", "entail");
  CHECK(std::get<ThreeWayTarget>(entail.target).label == Label3::kAligned);

  AdaptedExample contra = adapt_three_way(
      "I have been in Kentucky", "I have been in Europe", "contradict");
  CHECK(std::get<ThreeWayTarget>(contra.target).label == Label3::kContradict);

  AdaptedExample neutral = adapt_three_way(
      "I have been in Kentucky", "Kentucky has the best fried chicken",
      "neutral");
  CHECK(std::get<ThreeWayTarget>(neutral.target).label == Label3::kNeutral);

  try {
    adapt_three_way("p", "h", "maybe");
    FAIL("expected UNKNOWN_LABEL");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnknownLabel);
  }
}

TEST_CASE("adapt_sts rescales to [0, 1]") {
  CHECK(std::get<RegressionTarget>(
            adapt_sts("s1", "s2", 5.0, 0.0, 5.0).target)
            .value == 1.0);
  CHECK(std::get<RegressionTarget>(
            adapt_sts("s1", "s2", 0.0, 0.0, 5.0).target)
            .value == 0.0);
  CHECK(std::get<RegressionTarget>(
            adapt_sts("s1", "s2", 2.5, 0.0, 5.0).target)
            .value == 0.5);
  CHECK_THROWS_AS(adapt_sts("s1", "s2", 6.0, 0.0, 5.0), Error);
  CHECK_THROWS_AS(adapt_sts("s1", "s2", 1.0, 5.0, 0.0), Error);
}

TEST_CASE("adapt_binary_pair orientation and labels") {
  AdaptedExample ir =
      adapt_binary_pair("document with the answer", "the query", true,
                        TaskTag::kIr);
  CHECK(ir.pair.x1 == "document with the answer");
  CHECK(std::get<BinaryTarget>(ir.target).label == LabelBin::kAligned);

  AdaptedExample negative = adapt_binary_pair(
      "source", "hallucinated summary", false, TaskTag::kSummarization);
  CHECK(std::get<BinaryTarget>(negative.target).label == LabelBin::kNotAligned);
}

TEST_CASE("build_mcq_pairs construction") {
  McqSample sample{"ctx", "Q?", {"A", "B", "C", "D"}, 2, "m1"};
  std::vector<AdaptedExample> pairs = build_mcq_pairs(sample);
  REQUIRE(pairs.size() == 4);
  CHECK(pairs[0].pair.x2 == "Q? A");

  int aligned = 0;
  for (const auto& pair : pairs)
    if (std::get<BinaryTarget>(pair.target).label == LabelBin::kAligned)
      ++aligned;
  CHECK(aligned == 1);
  CHECK(std::get<BinaryTarget>(pairs[2].target).label == LabelBin::kAligned);

  McqSample empty_choice{"ctx", "Q?", {"A", ""}, 0, "m2"};
  CHECK_THROWS_AS(build_mcq_pairs(empty_choice), Error);
}

TEST_CASE("solve_mcq lexical worked example and tie-breaks") {
  LexicalScorer scorer;
  McqSample sample{"the sky is blue",
                   "what color is the sky?",
                   {"blue is the sky color", "green is the sky color"},
                   0,
                   "m"};
  CHECK(solve_mcq(scorer, sample) == 0);

  McqSample tied{"the sky is blue", "what?", {"same words", "same words"}, 1,
                 "t"};
  CHECK(solve_mcq(scorer, tied) == 0);  // lowest index wins ties

  McqSample zero_overlap{"the sky is blue",
                         "color?",
                         {"qqq zzz", "blue sky"},
                         1,
                         "z"};
  CHECK(solve_mcq(scorer, zero_overlap) == 1);
}

TEST_CASE("solve_mcq is invariant under monotone rescaling of scores") {
  // A scorer that squashes the lexical score through a strictly increasing
  // map must pick the same choice.
  struct SquashedLexical : PairScorer {
    AlignmentScore score(const TextPair& pair) const override {
      AlignmentScore s = lexical_score(pair);
      double v = 0.1 + 0.8 * s.pbin[0];
      s.pbin = {v, 1.0 - v};
      s.p3 = {v, 0.0, 1.0 - v};
      s.reg = v;
      return s;
    }
  };

  LexicalScorer plain;
  SquashedLexical squashed;
  SplitMix64 rng(31);
  const char* pool[] = {"sun", "moon", "star", "sky", "sea", "rock"};
  for (int trial = 0; trial < 30; ++trial) {
    McqSample sample;
    sample.context = "the sun and the sea";
    sample.question = "what is bright?";
    std::size_t n = 2 + rng.bounded(3);
    for (std::size_t i = 0; i < n; ++i) {
      std::string choice;
      for (int w = 0; w < 3; ++w)
        choice += std::string(pool[rng.bounded(6)]) + " ";
      sample.choices.push_back(choice);
    }
    sample.answer_index = 0;
    sample.id = "r" + std::to_string(trial);
    CHECK(solve_mcq(plain, sample) == solve_mcq(squashed, sample));
  }
}

TEST_CASE("adapt_answerability labels") {
  QaSample answerable{"ctx text", "q?", {"Paris"}, true, std::nullopt, "a"};
  CHECK(std::get<BinaryTarget>(
            adapt_answerability(answerable, "Paris").target)
            .label == LabelBin::kAligned);
  CHECK(std::get<BinaryTarget>(
            adapt_answerability(answerable, "the paris").target)
            .label == LabelBin::kAligned);  // SQuAD normalization
  CHECK(std::get<BinaryTarget>(
            adapt_answerability(answerable, "London").target)
            .label == LabelBin::kNotAligned);

  QaSample unanswerable{"ctx text", "q?", {}, false, std::nullopt, "u"};
  CHECK(std::get<BinaryTarget>(
            adapt_answerability(unanswerable, "anything").target)
            .label == LabelBin::kNotAligned);
}

TEST_CASE("solve_coref replacement and tie-breaks") {
  LexicalScorer scorer;
  //                0123456789012345678
  CorefSample sample{"Kirby said she left", 11, 14, {"Kirby", "Kentucky"}, 0,
                     "c"};
  CHECK(solve_coref(scorer, sample) == 0);

  CorefSample tied{"Kirby said she left", 11, 14, {"Kirby", "Kirby"}, 1, "t"};
  CHECK(solve_coref(scorer, tied) == 0);

  CorefSample identity{"Kirby said she left", 11, 14, {"she", "Mars"}, 0, "i"};
  // Candidate equal to the pronoun reproduces x1 verbatim: a perfect pair.
  CHECK(solve_coref(scorer, identity) == 0);

  CorefSample bad_span{"short", 3, 99, {"a", "b"}, 0, "b"};
  CHECK_THROWS_AS(solve_coref(scorer, bad_span), Error);
}

TEST_CASE("score_consistency on the 3-way head") {
  LexicalScorer scorer;
  CHECK(score_consistency(scorer, "The cat sat on the mat",
                          "The cat sat on the mat") == 1.0);
  CHECK(score_consistency(scorer, "alpha beta gamma", "delta epsilon") == 0.0);

  // One supported sentence, one unsupported: mean-max gives 1/2.
  double mixed = score_consistency(
      scorer, "The cat sat. The dog ran.", "The cat sat. Zebras fly yonder.");
  CHECK(mixed == 0.5);
  double strict = score_consistency(scorer, "The cat sat. The dog ran.",
                                    "The cat sat. Zebras fly yonder.",
                                    AggregationMode::kMinMax);
  CHECK(strict == 0.0);
}

TEST_CASE("mask_negative_plan counts and determinism") {
  std::string eight = "t1 t2 t3 t4 t5 t6 t7 t8";
  MaskPlan plan = mask_negative_plan(eight, 42);
  CHECK(plan.masked_positions.size() == 2);  // ceil(0.25 * 8)

  MaskPlan again = mask_negative_plan(eight, 42);
  CHECK(plan.masked_positions == again.masked_positions);
  CHECK(plan.masked_text == again.masked_text);

  MaskPlan four = mask_negative_plan("a b c d", 7);
  CHECK(four.masked_positions.size() == 1);  // ceil(0.25 * 4)

  CHECK_THROWS_AS(mask_negative_plan("a b c", 1), Error);
}

TEST_CASE("mask_negative_plan positions are distinct and masked") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 4 + rng.bounded(60);
    std::string text;
    for (std::size_t i = 0; i < n; ++i)
      text += "tok" + std::to_string(i) + " ";
    MaskPlan plan = mask_negative_plan(text, rng.next());

    auto expected = static_cast<std::size_t>(
        std::ceil(0.25 * static_cast<double>(n)));
    CHECK(plan.masked_positions.size() == expected);
    std::set<std::size_t> unique(plan.masked_positions.begin(),
                                 plan.masked_positions.end());
    CHECK(unique.size() == expected);

    std::vector<std::string> masked_tokens = whitespace_tokens(plan.masked_text);
    REQUIRE(masked_tokens.size() == n);
    for (std::size_t i = 0; i < n; ++i) {
      bool is_masked = unique.count(i) > 0;
      CHECK((masked_tokens[i] == kMaskSentinel) == is_masked);
    }
  }
}

TEST_CASE("infill_masks default hook fills from the document vocabulary") {
  std::string text = "red green blue red yellow pink teal gray";
  MaskPlan plan = mask_negative_plan(text, 5);
  std::string filled = infill_masks(plan, 99);
  std::vector<std::string> original = whitespace_tokens(text);
  std::set<std::string> vocab(original.begin(), original.end());
  for (const std::string& token : whitespace_tokens(filled))
    CHECK(vocab.count(token) == 1);

  // Custom hook takes precedence.
  std::string custom = infill_masks(
      plan, [](const MaskPlan&, std::size_t) { return std::string("XX"); });
  for (std::size_t pos : plan.masked_positions)
    CHECK(whitespace_tokens(custom)[pos] == "XX");
}
