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

#ifndef ALIGN_SEGMENT_HPP_
#define ALIGN_SEGMENT_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "align/scorer.hpp"
#include "align/types.hpp"

namespace align {

struct SentenceSet {
  std::vector<std::string> sentences;
};

struct Chunk {
  std::string text;
  std::size_t token_count = 0;
};

// Ordered, non-overlapping slices of x1: the concatenation of the chunks'
// token sequences equals the tokenization of x1.
struct ChunkSet {
  std::vector<Chunk> chunks;
};

enum class AggregationMode { kMeanMax, kMinMax };

// values[i][j] = head-selected score of (chunk i, sentence j).
struct ScoreMatrix {
  std::vector<std::vector<double>> values;
  Head head = Head::kBinAligned;
};

// Rule-based splitter: a sentence ends at terminal punctuation (. ! ?)
// followed by whitespace and an uppercase letter, or at end of text. Periods
// after a small fixed list of abbreviations do not end a sentence. Text with
// no terminal punctuation is a single sentence.
SentenceSet split_sentences(const std::string& text);

// Greedy fill: whole sentences are appended while the chunk stays within
// budget; a single sentence longer than the budget is hard-split on token
// boundaries. Tokens come from the given scorer's tokenizer.
ChunkSet chunk_context(const std::string& x1, std::size_t budget,
                       const PairScorer& scorer);
ChunkSet chunk_context(const std::string& x1, std::size_t budget);

// max over chunks per sentence, then mean (kMeanMax) or min (kMinMax) over
// sentences. The mean is accumulated in sentence order, left to right.
double reduce_matrix(const ScoreMatrix& matrix, AggregationMode mode);

// Reserved headroom for scorer special tokens when sizing chunks.
inline constexpr std::size_t kReservedSpecialTokens = 4;

// Split-then-aggregate evaluation: chunk x1, split x2 into sentences, score
// every chunk-sentence pair, and reduce. Cells may be scored concurrently
// (jobs > 1); the reduction always runs in fixed order afterwards, so the
// result is independent of scheduling.
double aggregate_align(const PairScorer& scorer, const std::string& x1,
                       const std::string& x2, Head head, AggregationMode mode,
                       std::size_t jobs = 1);

AggregationMode aggregation_mode_from_string(const std::string& name);
const char* to_string(AggregationMode mode);

}  // namespace align

#endif  // ALIGN_SEGMENT_HPP_
