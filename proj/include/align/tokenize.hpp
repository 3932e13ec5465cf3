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

#ifndef ALIGN_TOKENIZE_HPP_
#define ALIGN_TOKENIZE_HPP_

#include <string>
#include <vector>

namespace align {

// Splits on runs of whitespace. The shared token definition used by the
// lexical scorer, the chunker, and the word-level model tokenizer.
std::vector<std::string> whitespace_tokens(const std::string& text);

std::string to_lower(const std::string& text);

// Joins tokens with single spaces (the canonical reconstruction: the result
// re-tokenizes to exactly the input sequence).
std::string join_tokens(const std::vector<std::string>& tokens,
                        std::size_t begin, std::size_t end);

}  // namespace align

#endif  // ALIGN_TOKENIZE_HPP_
