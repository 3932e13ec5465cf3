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

#include <cctype>
#include <cmath>
#include <mutex>
#include <sstream>
#include <unordered_set>

#include "align/error.hpp"
#include "align/loss.hpp"
#include "align/scorer.hpp"
#include "align/tokenize.hpp"
#include "align/types.hpp"

namespace align {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyText: return "EMPTY_TEXT";
    case ErrorCode::kBudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::kBackendFailure: return "BACKEND_FAILURE";
    case ErrorCode::kLengthMismatch: return "LENGTH_MISMATCH";
    case ErrorCode::kEmptyBatch: return "EMPTY_BATCH";
    case ErrorCode::kUnknownLabel: return "UNKNOWN_LABEL";
    case ErrorCode::kOutOfRange: return "OUT_OF_RANGE";
    case ErrorCode::kNonpositiveBudget: return "NONPOSITIVE_BUDGET";
    case ErrorCode::kSpanOutOfBounds: return "SPAN_OUT_OF_BOUNDS";
    case ErrorCode::kTooShort: return "TOO_SHORT";
    case ErrorCode::kConstantInput: return "CONSTANT_INPUT";
    case ErrorCode::kSingleClass: return "SINGLE_CLASS";
    case ErrorCode::kEmpty: return "EMPTY";
    case ErrorCode::kEmptyDev: return "EMPTY_DEV";
    case ErrorCode::kParseError: return "PARSE_ERROR";
    case ErrorCode::kSchemaViolation: return "SCHEMA_VIOLATION";
  }
  return "UNKNOWN";
}

const char* to_string(Label3 label) {
  switch (label) {
    case Label3::kAligned: return "ALIGNED";
    case Label3::kContradict: return "CONTRADICT";
    case Label3::kNeutral: return "NEUTRAL";
  }
  return "?";
}

const char* to_string(LabelBin label) {
  return label == LabelBin::kAligned ? "ALIGNED" : "NOT_ALIGNED";
}

const char* to_string(Head head) {
  switch (head) {
    case Head::kBinAligned: return "bin";
    case Head::kThreeWayAligned: return "3way";
    case Head::kReg: return "reg";
  }
  return "?";
}

bool AlignmentScore::valid(double eps) const {
  double sum3 = 0.0, sum2 = 0.0;
  for (double p : p3) {
    if (!(p >= 0.0 && p <= 1.0)) return false;
    sum3 += p;
  }
  for (double p : pbin) {
    if (!(p >= 0.0 && p <= 1.0)) return false;
    sum2 += p;
  }
  return std::abs(sum3 - 1.0) <= eps && std::abs(sum2 - 1.0) <= eps &&
         reg >= 0.0 && reg <= 1.0;
}

std::vector<std::string> whitespace_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    std::size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }
  return tokens;
}

std::string to_lower(const std::string& text) {
  std::string out = text;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string join_tokens(const std::vector<std::string>& tokens,
                        std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end && i < tokens.size(); ++i) {
    if (i > begin) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> PairScorer::tokenize(const std::string& text) const {
  return whitespace_tokens(text);
}

AlignmentScore lexical_score(const TextPair& pair) {
  std::vector<std::string> t1 = whitespace_tokens(to_lower(pair.x1));
  std::vector<std::string> t2 = whitespace_tokens(to_lower(pair.x2));
  if (t1.empty() || t2.empty())
    throw Error(ErrorCode::kEmptyText,
                "lexical_score: a side tokenizes to zero tokens");

  std::unordered_set<std::string> context(t1.begin(), t1.end());
  std::unordered_set<std::string> claim(t2.begin(), t2.end());
  std::size_t covered = 0;
  for (const auto& token : claim)
    if (context.count(token)) ++covered;

  double r = static_cast<double>(covered) / static_cast<double>(claim.size());
  AlignmentScore score;
  score.p3 = {r, 0.0, 1.0 - r};
  score.pbin = {r, 1.0 - r};
  score.reg = r;
  return score;
}

AlignmentScore score_pair(const PairScorer& scorer, const TextPair& pair) {
  if (pair.x1.empty() || pair.x2.empty())
    throw Error(ErrorCode::kEmptyText, "score_pair: empty text");

  std::size_t budget = scorer.token_budget();
  if (budget != PairScorer::kUnlimited &&
      scorer.pair_token_count(pair) > budget) {
    std::ostringstream msg;
    msg << "score_pair: tokenized pair (" << scorer.pair_token_count(pair)
        << " tokens) exceeds the scorer budget of " << budget
        << "; route oversized inputs through aggregate_align";
    throw Error(ErrorCode::kBudgetExceeded, msg.str());
  }

  AlignmentScore result;
  if (scorer.single_flight()) {
    std::lock_guard<std::mutex> lock(scorer.flight_mutex());
    result = scorer.score(pair);
  } else {
    result = scorer.score(pair);
  }

  if (!result.valid())
    throw Error(ErrorCode::kBackendFailure,
                "score_pair: scorer produced an invalid AlignmentScore");
  return result;
}

double compute_loss(std::span<const AlignmentScore> predictions,
                    std::span<const Target> targets,
                    const LossWeights& weights) {
  if (predictions.size() != targets.size())
    throw Error(ErrorCode::kLengthMismatch,
                "compute_loss: predictions and targets differ in length");
  if (predictions.empty())
    throw Error(ErrorCode::kEmptyBatch, "compute_loss: empty batch");
  if (!weights.valid())
    throw Error(ErrorCode::kOutOfRange,
                "compute_loss: loss weights must be strictly positive");

  double sum3 = 0.0, sum_bin = 0.0, sum_reg = 0.0;
  std::size_t n3 = 0, n_bin = 0, n_reg = 0;

  for (std::size_t i = 0; i < targets.size(); ++i) {
    const AlignmentScore& p = predictions[i];
    if (const auto* t3 = std::get_if<ThreeWayTarget>(&targets[i])) {
      sum3 += -std::log(p.p3[static_cast<std::size_t>(t3->label)]);
      ++n3;
    } else if (const auto* tb = std::get_if<BinaryTarget>(&targets[i])) {
      sum_bin += -std::log(p.pbin[static_cast<std::size_t>(tb->label)]);
      ++n_bin;
    } else {
      const auto& tr = std::get<RegressionTarget>(targets[i]);
      if (tr.value < 0.0 || tr.value > 1.0)
        throw Error(ErrorCode::kOutOfRange,
                    "compute_loss: regression target outside [0, 1]");
      double d = p.reg - tr.value;
      sum_reg += d * d;
      ++n_reg;
    }
  }

  double loss = 0.0;
  if (n3 > 0) loss += weights.three_way * (sum3 / static_cast<double>(n3));
  if (n_bin > 0) loss += weights.binary * (sum_bin / static_cast<double>(n_bin));
  if (n_reg > 0)
    loss += weights.regression * (sum_reg / static_cast<double>(n_reg));
  return loss;
}

}  // namespace align
