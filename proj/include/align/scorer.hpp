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

#ifndef ALIGN_SCORER_HPP_
#define ALIGN_SCORER_HPP_

#include <cstddef>
#include <limits>
#include <mutex>
#include <string>
#include <vector>

#include "align/types.hpp"

namespace align {

// A pair scorer maps (x1, x2) to an AlignmentScore. Implementations must be
// deterministic for a fixed input. Scorers also own the token definition used
// for budgeting so segmentation never needs a second backend round trip.
class PairScorer {
 public:
  static constexpr std::size_t kUnlimited =
      std::numeric_limits<std::size_t>::max();

  virtual ~PairScorer() = default;

  virtual AlignmentScore score(const TextPair& pair) const = 0;

  // Maximum tokens (including any special-token overhead) for one scored pair.
  virtual std::size_t token_budget() const { return kUnlimited; }

  virtual std::vector<std::string> tokenize(const std::string& text) const;

  virtual std::size_t count_tokens(const std::string& text) const {
    return tokenize(text).size();
  }

  // Total tokens a pair occupies, including special-token overhead.
  virtual std::size_t pair_token_count(const TextPair& pair) const {
    return count_tokens(pair.x1) + count_tokens(pair.x2);
  }

  // Scorers that cannot take concurrent calls declare single-flight; the
  // engine then serializes score() invocations.
  virtual bool single_flight() const { return false; }

  std::mutex& flight_mutex() const { return flight_mutex_; }

 private:
  mutable std::mutex flight_mutex_;
};

// Deterministic baseline: the fraction of x2's distinct lowercased tokens
// that appear among x1's tokens. pbin = (r, 1-r), p3 = (r, 0, 1-r), reg = r.
AlignmentScore lexical_score(const TextPair& pair);

class LexicalScorer final : public PairScorer {
 public:
  AlignmentScore score(const TextPair& pair) const override {
    return lexical_score(pair);
  }
};

// Budget-checked entry point. Throws BUDGET_EXCEEDED when the tokenized pair
// does not fit the scorer's declared limit (callers that may exceed it must
// go through aggregate_align), validates the returned score, and honors the
// scorer's single-flight declaration.
AlignmentScore score_pair(const PairScorer& scorer, const TextPair& pair);

}  // namespace align

#endif  // ALIGN_SCORER_HPP_
