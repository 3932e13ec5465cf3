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

#ifndef ALIGN_LOSS_HPP_
#define ALIGN_LOSS_HPP_

#include <span>

#include "align/types.hpp"

namespace align {

// L_total = w3 * L_3way + wbin * L_bin + wreg * L_reg, where L_3way and
// L_bin are mean negative log-probability of the true label over the targets
// routed to that head (0 when the head has none) and L_reg is mean squared
// error. Averaging happens within each head before weighting, so the head
// balance does not depend on batch composition.
double compute_loss(std::span<const AlignmentScore> predictions,
                    std::span<const Target> targets,
                    const LossWeights& weights = {});

}  // namespace align

#endif  // ALIGN_LOSS_HPP_
