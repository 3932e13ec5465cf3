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

#include "align/segment.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "align/error.hpp"
#include "align/parallel.hpp"
#include "align/tokenize.hpp"

namespace align {

namespace {

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

// Words whose trailing period does not end a sentence.
const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> kAbbrev = {
      "dr.",  "mr.",   "mrs.",  "ms.",  "prof.", "st.",  "vs.",
      "etc.", "e.g.",  "i.e.",  "fig.", "no.",   "jr.",  "sr.",
      "inc.", "ltd.",  "co.",   "dept.", "univ.", "al.",  "approx.",
  };
  return kAbbrev;
}

bool guarded_abbreviation(const std::string& text, std::size_t period) {
  std::size_t begin = period;
  while (begin > 0 &&
         !std::isspace(static_cast<unsigned char>(text[begin - 1])))
    --begin;
  return abbreviations().count(
             to_lower(text.substr(begin, period - begin + 1))) > 0;
}

std::string trimmed(const std::string& text, std::size_t begin,
                    std::size_t end) {
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])))
    ++begin;
  while (end > begin &&
         std::isspace(static_cast<unsigned char>(text[end - 1])))
    --end;
  return text.substr(begin, end - begin);
}

}  // namespace

SentenceSet split_sentences(const std::string& text) {
  SentenceSet out;
  std::size_t n = text.size();
  std::size_t start = 0;

  for (std::size_t i = 0; i < n; ++i) {
    if (!is_terminal(text[i])) continue;

    std::size_t run_end = i;
    while (run_end + 1 < n && is_terminal(text[run_end + 1])) ++run_end;

    // A lone period after a listed abbreviation never terminates.
    if (run_end == i && text[i] == '.' && guarded_abbreviation(text, i)) {
      continue;
    }

    std::size_t k = run_end + 1;
    while (k < n && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
    bool at_end = k >= n;
    bool next_upper = k > run_end + 1 && k < n &&
                      std::isupper(static_cast<unsigned char>(text[k]));
    if (at_end || next_upper) {
      std::string sentence = trimmed(text, start, run_end + 1);
      if (!sentence.empty()) out.sentences.push_back(std::move(sentence));
      start = run_end + 1;
    }
    i = run_end;
  }

  std::string tail = trimmed(text, start, n);
  if (!tail.empty()) out.sentences.push_back(std::move(tail));

  if (out.sentences.empty())
    throw Error(ErrorCode::kEmptyText, "split_sentences: no content");
  return out;
}

ChunkSet chunk_context(const std::string& x1, std::size_t budget,
                       const PairScorer& scorer) {
  if (budget == 0)
    throw Error(ErrorCode::kNonpositiveBudget, "chunk_context: budget is 0");

  SentenceSet sentences = split_sentences(x1);

  ChunkSet out;
  std::vector<std::string> current;
  auto flush = [&] {
    if (current.empty()) return;
    out.chunks.push_back(
        Chunk{join_tokens(current, 0, current.size()), current.size()});
    current.clear();
  };

  for (const std::string& sentence : sentences.sentences) {
    std::vector<std::string> tokens = scorer.tokenize(sentence);
    if (tokens.empty()) continue;

    if (current.size() + tokens.size() <= budget) {
      current.insert(current.end(), tokens.begin(), tokens.end());
      continue;
    }
    flush();
    if (tokens.size() <= budget) {
      current = std::move(tokens);
      continue;
    }
    // Oversized sentence: hard-split on token boundaries; the remainder
    // stays open so following sentences can still pack in.
    std::size_t idx = 0;
    while (tokens.size() - idx > budget) {
      out.chunks.push_back(
          Chunk{join_tokens(tokens, idx, idx + budget), budget});
      idx += budget;
    }
    current.assign(tokens.begin() + static_cast<std::ptrdiff_t>(idx),
                   tokens.end());
  }
  flush();

  if (out.chunks.empty())
    throw Error(ErrorCode::kEmptyText, "chunk_context: no tokens");
  return out;
}

ChunkSet chunk_context(const std::string& x1, std::size_t budget) {
  LexicalScorer scorer;
  return chunk_context(x1, budget, scorer);
}

double reduce_matrix(const ScoreMatrix& matrix, AggregationMode mode) {
  if (matrix.values.empty() || matrix.values.front().empty())
    throw Error(ErrorCode::kEmpty, "reduce_matrix: empty matrix");
  std::size_t rows = matrix.values.size();
  std::size_t cols = matrix.values.front().size();
  for (const auto& row : matrix.values)
    if (row.size() != cols)
      throw Error(ErrorCode::kLengthMismatch, "reduce_matrix: ragged matrix");

  double acc = mode == AggregationMode::kMeanMax ? 0.0 : 1.0;
  for (std::size_t j = 0; j < cols; ++j) {
    double best = matrix.values[0][j];
    for (std::size_t i = 1; i < rows; ++i)
      best = std::max(best, matrix.values[i][j]);
    if (mode == AggregationMode::kMeanMax)
      acc += best;
    else
      acc = std::min(acc, best);
  }
  return mode == AggregationMode::kMeanMax ? acc / static_cast<double>(cols)
                                           : acc;
}

double aggregate_align(const PairScorer& scorer, const std::string& x1,
                       const std::string& x2, Head head, AggregationMode mode,
                       std::size_t jobs) {
  SentenceSet sentences = split_sentences(x2);
  std::size_t sentence_count = sentences.sentences.size();

  std::vector<std::size_t> sentence_tokens(sentence_count);
  std::size_t max_sentence = 0;
  for (std::size_t j = 0; j < sentence_count; ++j) {
    sentence_tokens[j] = scorer.count_tokens(sentences.sentences[j]);
    max_sentence = std::max(max_sentence, sentence_tokens[j]);
  }

  std::size_t budget = scorer.token_budget();
  auto chunk_budget_for = [&](std::size_t sentence_len) {
    if (budget == PairScorer::kUnlimited) return PairScorer::kUnlimited;
    std::size_t reserved = sentence_len + kReservedSpecialTokens;
    return budget > reserved ? budget - reserved : std::size_t{1};
  };

  // Cells are (chunk text, sentence index); rows per sentence are contiguous
  // so the per-sentence max runs over chunks in order.
  struct Cell {
    const std::string* chunk;
    std::size_t sentence;
  };
  std::vector<ChunkSet> chunkings;
  std::vector<Cell> cells;
  std::vector<std::size_t> row_begin(sentence_count + 1, 0);

  bool per_sentence = budget != PairScorer::kUnlimited &&
                      max_sentence > budget / 2;
  if (per_sentence) {
    chunkings.reserve(sentence_count);
    for (std::size_t j = 0; j < sentence_count; ++j) {
      chunkings.push_back(
          chunk_context(x1, chunk_budget_for(sentence_tokens[j]), scorer));
      row_begin[j] = cells.size();
      for (const Chunk& chunk : chunkings.back().chunks)
        cells.push_back(Cell{&chunk.text, j});
    }
  } else {
    chunkings.push_back(
        chunk_context(x1, chunk_budget_for(max_sentence), scorer));
    for (std::size_t j = 0; j < sentence_count; ++j) {
      row_begin[j] = cells.size();
      for (const Chunk& chunk : chunkings.front().chunks)
        cells.push_back(Cell{&chunk.text, j});
    }
  }
  row_begin[sentence_count] = cells.size();

  std::vector<double> values(cells.size());
  parallel_for(cells.size(), jobs, [&](std::size_t i) {
    TextPair pair{*cells[i].chunk, sentences.sentences[cells[i].sentence]};
    values[i] = score_pair(scorer, pair).head_value(head);
  });

  double acc = mode == AggregationMode::kMeanMax ? 0.0 : 1.0;
  for (std::size_t j = 0; j < sentence_count; ++j) {
    double best = values[row_begin[j]];
    for (std::size_t i = row_begin[j] + 1; i < row_begin[j + 1]; ++i)
      best = std::max(best, values[i]);
    if (mode == AggregationMode::kMeanMax)
      acc += best;
    else
      acc = std::min(acc, best);
  }
  return mode == AggregationMode::kMeanMax
             ? acc / static_cast<double>(sentence_count)
             : acc;
}

AggregationMode aggregation_mode_from_string(const std::string& name) {
  if (name == "mean-max") return AggregationMode::kMeanMax;
  if (name == "min-max") return AggregationMode::kMinMax;
  throw Error(ErrorCode::kParseError,
              "unknown aggregation mode '" + name + "' (mean-max|min-max)");
}

const char* to_string(AggregationMode mode) {
  return mode == AggregationMode::kMeanMax ? "mean-max" : "min-max";
}

}  // namespace align
