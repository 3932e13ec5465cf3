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

#ifndef ALIGN_TYPES_HPP_
#define ALIGN_TYPES_HPP_

#include <array>
#include <cmath>
#include <string>
#include <variant>

namespace align {

// 3-way alignment label. Index order matches AlignmentScore::p3.
enum class Label3 { kAligned = 0, kContradict = 1, kNeutral = 2 };

// Binary alignment label. Index order matches AlignmentScore::pbin.
enum class LabelBin { kAligned = 0, kNotAligned = 1 };

// Which of the three model outputs downstream consumers read.
enum class Head { kBinAligned, kThreeWayAligned, kReg };

// The three outputs of a pair scorer: a distribution over the 3-way labels,
// a distribution over the binary labels, and a regression score in [0, 1].
struct AlignmentScore {
  std::array<double, 3> p3{};    // ALIGNED, CONTRADICT, NEUTRAL
  std::array<double, 2> pbin{};  // ALIGNED, NOT_ALIGNED
  double reg = 0.0;

  double head_value(Head head) const {
    switch (head) {
      case Head::kBinAligned:
        return pbin[0];
      case Head::kThreeWayAligned:
        return p3[0];
      case Head::kReg:
        return reg;
    }
    return reg;
  }

  // Simplex and range invariants, within eps.
  bool valid(double eps = 1e-6) const;
};

struct TextPair {
  std::string x1;  // context / premise side
  std::string x2;  // claim / hypothesis side
};

struct ThreeWayTarget {
  Label3 label;
};
struct BinaryTarget {
  LabelBin label;
};
struct RegressionTarget {
  double value;  // in [0, 1]
};

using Target = std::variant<ThreeWayTarget, BinaryTarget, RegressionTarget>;

// Per-head loss weights. The defaults normalize each classification head so
// a uniform prediction contributes exactly 1 (natural log convention).
struct LossWeights {
  double three_way = 1.0 / std::log(3.0);
  double binary = 1.0 / std::log(2.0);
  double regression = 1.0;

  bool valid() const { return three_way > 0 && binary > 0 && regression > 0; }
};

const char* to_string(Label3 label);
const char* to_string(LabelBin label);
const char* to_string(Head head);

}  // namespace align

#endif  // ALIGN_TYPES_HPP_
