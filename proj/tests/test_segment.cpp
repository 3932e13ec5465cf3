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
#include <vector>

#include "align/error.hpp"
#include "align/rng.hpp"
#include "align/segment.hpp"
#include "align/tokenize.hpp"
#include "support/oracles.hpp"
#include "support/stub_scorer.hpp"

using namespace align;
using align::testing::StubMatrixScorer;
using align::testing::reference_aggregate;
using align::testing::stub_x1;
using align::testing::stub_x2;

TEST_CASE("split_sentences basics") {
  CHECK(split_sentences("A cat. A dog.").sentences ==
        std::vector<std::string>{"A cat.", "A dog."});
  CHECK(split_sentences("No punctuation here").sentences ==
        std::vector<std::string>{"No punctuation here"});
  CHECK(split_sentences("Dr. Smith arrived. He left.").sentences ==
        std::vector<std::string>{"Dr. Smith arrived.", "He left."});
}

TEST_CASE("split_sentences guards and boundaries") {
  // Lowercase continuation is not a boundary.
  CHECK(split_sentences("It was v1.2 of the spec. Then came v2.").sentences ==
        std::vector<std::string>{"It was v1.2 of the spec.", "Then came v2."});
  CHECK(split_sentences("He asked why? Because. So there!").sentences ==
        std::vector<std::string>{"He asked why?", "Because.", "So there!"});
  CHECK(split_sentences("E.g. this stays whole").sentences.size() == 1);
  CHECK(split_sentences("Stop!!! Now.").sentences ==
        std::vector<std::string>{"Stop!!!", "Now."});
  CHECK_THROWS_AS(split_sentences("   "), Error);
}

TEST_CASE("chunk_context worked examples") {
  // Sentence token lengths [4, 5, 3] with budget 10 -> chunks [9, 3].
  std::string x1 = "A b c d. E f g h i. J k l.";
  ChunkSet chunks = chunk_context(x1, 10);
  REQUIRE(chunks.chunks.size() == 2);
  CHECK(chunks.chunks[0].token_count == 9);
  CHECK(chunks.chunks[1].token_count == 3);

  // One oversize sentence hard-splits into [10, 10, 5].
  std::string big;
  for (int i = 0; i < 25; ++i) big += "t" + std::to_string(i) + " ";
  ChunkSet split = chunk_context(big, 10);
  REQUIRE(split.chunks.size() == 3);
  CHECK(split.chunks[0].token_count == 10);
  CHECK(split.chunks[1].token_count == 10);
  CHECK(split.chunks[2].token_count == 5);

  // Short text is a single identity chunk.
  ChunkSet one = chunk_context("Hello world", 10);
  REQUIRE(one.chunks.size() == 1);
  CHECK(one.chunks[0].text == "Hello world");
}

TEST_CASE("chunk_context errors") {
  CHECK_THROWS_AS(chunk_context("text", 0), Error);
  CHECK_THROWS_AS(chunk_context("  ", 5), Error);
}

TEST_CASE("chunk partition property on random documents") {
  SplitMix64 rng(2022);
  for (int trial = 0; trial < 300; ++trial) {
    // Random document with varied sentence shapes and punctuation.
    std::string doc;
    std::size_t sentences = 1 + rng.bounded(6);
    for (std::size_t s = 0; s < sentences; ++s) {
      std::size_t words = 1 + rng.bounded(30);
      for (std::size_t w = 0; w < words; ++w) {
        std::string token = "w" + std::to_string(rng.bounded(50));
        if (w == 0 && rng.bounded(2)) token[0] = 'W';
        doc += token;
        doc += (w + 1 < words) ? " " : "";
      }
      switch (rng.bounded(4)) {
        case 0: doc += ". "; break;
        case 1: doc += "! "; break;
        case 2: doc += "? "; break;
        default: doc += " "; break;
      }
    }
    std::size_t budget = 1 + rng.bounded(40);
    ChunkSet chunks = chunk_context(doc, budget);

    std::vector<std::string> reassembled;
    for (const Chunk& chunk : chunks.chunks) {
      CHECK(chunk.token_count <= budget);
      std::vector<std::string> tokens = whitespace_tokens(chunk.text);
      CHECK(tokens.size() == chunk.token_count);
      reassembled.insert(reassembled.end(), tokens.begin(), tokens.end());
    }
    CHECK(reassembled == whitespace_tokens(doc));
  }
}

TEST_CASE("reduce_matrix worked examples") {
  // rows = chunks, cols = sentences.
  ScoreMatrix m;
  m.values = {{0.2, 0.9}, {0.6, 0.4}};
  CHECK(reduce_matrix(m, AggregationMode::kMeanMax) == 0.75);
  CHECK(reduce_matrix(m, AggregationMode::kMinMax) == 0.6);
}

TEST_CASE("aggregate_align identity case equals score_pair") {
  StubMatrixScorer scorer({{0.375}});
  double value = aggregate_align(scorer, stub_x1(1), stub_x2(1),
                                 Head::kBinAligned, AggregationMode::kMeanMax);
  CHECK(value == 0.375);
  CHECK(aggregate_align(scorer, stub_x1(1), stub_x2(1), Head::kReg,
                        AggregationMode::kMinMax) == 0.375);
}

TEST_CASE("aggregate_align matches the worked 2x2 grid") {
  StubMatrixScorer scorer({{0.2, 0.9}, {0.6, 0.4}});
  CHECK(aggregate_align(scorer, stub_x1(2), stub_x2(2), Head::kBinAligned,
                        AggregationMode::kMeanMax) == 0.75);
  CHECK(aggregate_align(scorer, stub_x1(2), stub_x2(2), Head::kBinAligned,
                        AggregationMode::kMinMax) == 0.6);
}

TEST_CASE("aggregate_align equals the direct reference on random grids") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t rows = 1 + rng.bounded(5), cols = 1 + rng.bounded(5);
    std::vector<std::vector<double>> grid(rows, std::vector<double>(cols));
    for (auto& row : grid)
      for (double& v : row) v = rng.uniform();

    StubMatrixScorer scorer(grid);
    for (std::size_t jobs : {std::size_t{1}, std::size_t{4}}) {
      double mean_max =
          aggregate_align(scorer, stub_x1(rows), stub_x2(cols),
                          Head::kBinAligned, AggregationMode::kMeanMax, jobs);
      double min_max =
          aggregate_align(scorer, stub_x1(rows), stub_x2(cols),
                          Head::kBinAligned, AggregationMode::kMinMax, jobs);
      CHECK(mean_max == reference_aggregate(grid, AggregationMode::kMeanMax));
      CHECK(min_max == reference_aggregate(grid, AggregationMode::kMinMax));
      CHECK(mean_max >= min_max);
    }
  }
}

TEST_CASE("aggregation is invariant under chunk and sentence permutation") {
  // Exactly representable cell values keep the permuted mean bit-identical.
  SplitMix64 rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t rows = 1 + rng.bounded(4), cols = 1 + rng.bounded(4);
    std::vector<std::vector<double>> grid(rows, std::vector<double>(cols));
    for (auto& row : grid)
      for (double& v : row) v = static_cast<double>(rng.bounded(9)) / 8.0;

    for (AggregationMode mode :
         {AggregationMode::kMeanMax, AggregationMode::kMinMax}) {
      double base = reference_aggregate(grid, mode);

      std::vector<std::vector<double>> row_perm(grid.rbegin(), grid.rend());
      CHECK(reference_aggregate(row_perm, mode) == base);

      std::vector<std::vector<double>> col_perm = grid;
      for (std::size_t i = 0; i < rows; ++i)
        std::reverse(col_perm[i].begin(), col_perm[i].end());
      CHECK(reference_aggregate(col_perm, mode) == base);

      // Both modes stay within the grid's range.
      double lo = 1.0, hi = 0.0;
      for (const auto& row : grid)
        for (double v : row) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      CHECK(base >= lo);
      CHECK(base <= hi);
    }
  }
}

TEST_CASE("aggregate_align propagates empty-text errors") {
  StubMatrixScorer scorer({{0.5}});
  CHECK_THROWS_AS(aggregate_align(scorer, "", stub_x2(1), Head::kBinAligned,
                                  AggregationMode::kMeanMax),
                  Error);
  CHECK_THROWS_AS(aggregate_align(scorer, stub_x1(1), "  ", Head::kBinAligned,
                                  AggregationMode::kMeanMax),
                  Error);
}
