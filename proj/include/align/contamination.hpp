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

#ifndef ALIGN_CONTAMINATION_HPP_
#define ALIGN_CONTAMINATION_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace align {

inline constexpr int kMinNgramOrder = 8;
inline constexpr int kMaxNgramOrder = 13;
inline constexpr int kDefaultMinSubsetSize = 100;

// Contamination word normalization: lowercase, split on whitespace, ASCII
// punctuation stripped from token edges.
std::vector<std::string> contamination_words(const std::string& text);

// 5th percentile (nearest-rank) of example lengths in words, clamped to
// [kMinNgramOrder, kMaxNgramOrder].
int choose_n(std::span<const std::string> eval_examples);

// Set of 64-bit hashes of every contiguous word n-gram in the training
// corpus. The hash is fixed and seedless so indexes reproduce across runs.
class NgramIndex {
 public:
  explicit NgramIndex(int n);

  void add_text(const std::string& text);
  bool contains_any(const std::string& text) const;

  int n() const { return n_; }
  std::size_t size() const { return grams_.size(); }

 private:
  int n_;
  std::unordered_set<std::uint64_t> grams_;
};

NgramIndex build_ngram_index(std::span<const std::string> training_texts,
                             int n);

// Indices into eval_examples; clean and dirty partition the input.
struct Partition {
  std::vector<std::size_t> clean;
  std::vector<std::size_t> dirty;
};

// An example is dirty iff at least one of its n-grams is in the index.
Partition classify_examples(const NgramIndex& index,
                            std::span<const std::string> eval_examples);

struct ContaminationReport {
  int n = 0;
  double dirty_fraction = 0.0;
  double metric_full = 0.0;
  std::optional<double> metric_clean;
  std::optional<double> metric_dirty;
  std::optional<double> delta_clean_vs_full;
  int min_subset_size = kDefaultMinSubsetSize;
};

// Fills the deltas and suppresses subset metrics when the subset has fewer
// than min_subset_size examples.
ContaminationReport contamination_delta(
    double metric_full, std::optional<double> metric_clean,
    std::optional<double> metric_dirty, std::size_t clean_size,
    std::size_t dirty_size, int n,
    int min_subset_size = kDefaultMinSubsetSize);

}  // namespace align

#endif  // ALIGN_CONTAMINATION_HPP_
