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

#include "align/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "align/tokenize.hpp"

namespace align {

namespace {

// Average ranks, 1-based; tied values share the mean of their rank range.
std::vector<double> average_ranks(std::span<const double> values) {
  std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw Error(ErrorCode::kConstantInput,
                "correlations: constant input has no defined correlation");
  return sxy / std::sqrt(sxx * syy);
}

double kendall_tau(std::span<const double> x, std::span<const double> y,
                   KendallVariant variant) {
  std::size_t n = x.size();
  long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dx = x[i] - x[j], dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) continue;  // joint ties drop out of tau-b
      if (dx == 0.0) {
        ++ties_x;
      } else if (dy == 0.0) {
        ++ties_y;
      } else if ((dx > 0.0) == (dy > 0.0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  double n0 = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
  double diff = static_cast<double>(concordant - discordant);
  if (variant == KendallVariant::kTauA) return diff / n0;

  // Tau-b denominator counts pairs tied in x (resp. y) including joint ties.
  long long joint = static_cast<long long>(n0) - concordant - discordant -
                    ties_x - ties_y;
  double tx = static_cast<double>(ties_x + joint);
  double ty = static_cast<double>(ties_y + joint);
  double denom = std::sqrt((n0 - tx) * (n0 - ty));
  if (denom == 0.0)
    throw Error(ErrorCode::kConstantInput,
                "correlations: kendall tau-b undefined for constant input");
  return diff / denom;
}

}  // namespace

CorrelationTriple correlations(std::span<const double> x,
                               std::span<const double> y,
                               KendallVariant kendall) {
  if (x.size() != y.size())
    throw Error(ErrorCode::kLengthMismatch, "correlations: length mismatch");
  if (x.size() < 3)
    throw Error(ErrorCode::kEmpty, "correlations: need at least 3 points");

  CorrelationTriple out;
  out.pearson = pearson(x, y);
  std::vector<double> rx = average_ranks(x);
  std::vector<double> ry = average_ranks(y);
  out.spearman = pearson(rx, ry);
  out.kendall = kendall_tau(x, y, kendall);
  return out;
}

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size())
    throw Error(ErrorCode::kLengthMismatch, "roc_auc: length mismatch");
  if (scores.size() < 2)
    throw Error(ErrorCode::kEmpty, "roc_auc: need at least 2 points");

  std::size_t positives = 0;
  for (int label : labels) {
    if (label != 0 && label != 1)
      throw Error(ErrorCode::kOutOfRange, "roc_auc: labels must be 0 or 1");
    positives += static_cast<std::size_t>(label);
  }
  std::size_t negatives = scores.size() - positives;
  if (positives == 0 || negatives == 0)
    throw Error(ErrorCode::kSingleClass,
                "roc_auc: both classes must be present");

  // Rank formulation of the Mann-Whitney statistic; average ranks make tied
  // pairs count one half.
  std::vector<double> ranks = average_ranks(scores);
  double rank_sum_pos = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (labels[i] == 1) rank_sum_pos += ranks[i];

  double n1 = static_cast<double>(positives);
  double n0 = static_cast<double>(negatives);
  return (rank_sum_pos - n1 * (n1 + 1.0) / 2.0) / (n1 * n0);
}

double roc_auc(const ScoredBinarySet& data) {
  return roc_auc(std::span<const double>(data.scores),
                 std::span<const int>(data.labels));
}

std::string squad_normalize(const std::string& text) {
  std::string lowered = to_lower(text);
  std::string no_punct;
  no_punct.reserve(lowered.size());
  for (char c : lowered)
    if (!std::ispunct(static_cast<unsigned char>(c))) no_punct += c;

  std::vector<std::string> tokens = whitespace_tokens(no_punct);
  std::string out;
  for (const std::string& token : tokens) {
    if (token == "a" || token == "an" || token == "the") continue;
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

SquadScore squad_scores(const std::string& prediction,
                        std::span<const std::string> gold_answers,
                        const std::string& sentinel) {
  std::string pred = squad_normalize(prediction);

  if (gold_answers.empty()) {
    bool abstained = pred.empty() || pred == squad_normalize(sentinel);
    return SquadScore{abstained ? 1 : 0, abstained ? 1.0 : 0.0};
  }

  std::vector<std::string> pred_tokens = whitespace_tokens(pred);
  SquadScore best;
  for (const std::string& gold_raw : gold_answers) {
    std::string gold = squad_normalize(gold_raw);
    if (pred == gold) best.exact_match = 1;

    std::vector<std::string> gold_tokens = whitespace_tokens(gold);
    double f1 = 0.0;
    if (pred_tokens.empty() || gold_tokens.empty()) {
      f1 = (pred_tokens.empty() && gold_tokens.empty()) ? 1.0 : 0.0;
    } else {
      std::map<std::string, int> gold_counts;
      for (const auto& t : gold_tokens) ++gold_counts[t];
      int overlap = 0;
      for (const auto& t : pred_tokens) {
        auto it = gold_counts.find(t);
        if (it != gold_counts.end() && it->second > 0) {
          ++overlap;
          --it->second;
        }
      }
      if (overlap > 0) {
        double precision =
            static_cast<double>(overlap) / static_cast<double>(pred_tokens.size());
        double recall =
            static_cast<double>(overlap) / static_cast<double>(gold_tokens.size());
        f1 = 2.0 * precision * recall / (precision + recall);
      }
    }
    best.f1 = std::max(best.f1, f1);
  }
  return best;
}

}  // namespace align
