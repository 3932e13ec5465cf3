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

#include "align/contamination.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "align/error.hpp"
#include "align/tokenize.hpp"

namespace align {

namespace {

// FNV-1a 64 over the tokens of one n-gram, with a unit separator between
// tokens. Seedless on purpose: indexes must reproduce across runs.
constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t hash_ngram(const std::vector<std::string>& words,
                         std::size_t begin, std::size_t n) {
  std::uint64_t h = kFnvOffset;
  for (std::size_t i = begin; i < begin + n; ++i) {
    for (char c : words[i]) {
      h ^= static_cast<unsigned char>(c);
      h *= kFnvPrime;
    }
    h ^= 0x1f;
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace

std::vector<std::string> contamination_words(const std::string& text) {
  std::vector<std::string> out;
  for (const std::string& raw : whitespace_tokens(to_lower(text))) {
    std::size_t begin = 0, end = raw.size();
    while (begin < end && std::ispunct(static_cast<unsigned char>(raw[begin])))
      ++begin;
    while (end > begin &&
           std::ispunct(static_cast<unsigned char>(raw[end - 1])))
      --end;
    if (end > begin) out.push_back(raw.substr(begin, end - begin));
  }
  return out;
}

int choose_n(std::span<const std::string> eval_examples) {
  if (eval_examples.empty())
    throw Error(ErrorCode::kEmpty, "choose_n: no eval examples");

  std::vector<std::size_t> lengths;
  lengths.reserve(eval_examples.size());
  for (const std::string& example : eval_examples)
    lengths.push_back(contamination_words(example).size());
  std::sort(lengths.begin(), lengths.end());

  // Nearest-rank 5th percentile: the smallest value with at least 5% of the
  // sample at or below it.
  std::size_t rank = static_cast<std::size_t>(
      std::ceil(0.05 * static_cast<double>(lengths.size())));
  if (rank == 0) rank = 1;
  auto n = static_cast<long long>(lengths[rank - 1]);
  return static_cast<int>(
      std::clamp(n, static_cast<long long>(kMinNgramOrder),
                 static_cast<long long>(kMaxNgramOrder)));
}

NgramIndex::NgramIndex(int n) : n_(n) {
  if (n < 1)
    throw Error(ErrorCode::kOutOfRange, "NgramIndex: n must be >= 1");
}

void NgramIndex::add_text(const std::string& text) {
  std::vector<std::string> words = contamination_words(text);
  auto n = static_cast<std::size_t>(n_);
  if (words.size() < n) return;
  for (std::size_t i = 0; i + n <= words.size(); ++i)
    grams_.insert(hash_ngram(words, i, n));
}

bool NgramIndex::contains_any(const std::string& text) const {
  std::vector<std::string> words = contamination_words(text);
  auto n = static_cast<std::size_t>(n_);
  if (words.size() < n) return false;
  for (std::size_t i = 0; i + n <= words.size(); ++i)
    if (grams_.count(hash_ngram(words, i, n))) return true;
  return false;
}

NgramIndex build_ngram_index(std::span<const std::string> training_texts,
                             int n) {
  NgramIndex index(n);
  for (const std::string& text : training_texts) index.add_text(text);
  return index;
}

Partition classify_examples(const NgramIndex& index,
                            std::span<const std::string> eval_examples) {
  Partition out;
  for (std::size_t i = 0; i < eval_examples.size(); ++i) {
    if (index.contains_any(eval_examples[i]))
      out.dirty.push_back(i);
    else
      out.clean.push_back(i);
  }
  return out;
}

ContaminationReport contamination_delta(double metric_full,
                                        std::optional<double> metric_clean,
                                        std::optional<double> metric_dirty,
                                        std::size_t clean_size,
                                        std::size_t dirty_size, int n,
                                        int min_subset_size) {
  ContaminationReport report;
  report.n = n;
  report.min_subset_size = min_subset_size;
  report.metric_full = metric_full;

  std::size_t total = clean_size + dirty_size;
  report.dirty_fraction =
      total == 0 ? 0.0
                 : static_cast<double>(dirty_size) / static_cast<double>(total);

  auto min_size = static_cast<std::size_t>(min_subset_size);
  if (metric_clean && clean_size >= min_size) {
    report.metric_clean = metric_clean;
    report.delta_clean_vs_full = *metric_clean - metric_full;
  }
  if (metric_dirty && dirty_size >= min_size) report.metric_dirty = metric_dirty;
  return report;
}

}  // namespace align
