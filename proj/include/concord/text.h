// Copyright 2026 The Concord Authors.
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

#ifndef CONCORD_TEXT_H_
#define CONCORD_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace concord {

// ASCII case folding; byte offsets are preserved.
std::string to_lower(std::string_view text);
std::string trim(std::string_view text);

inline bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

struct Token {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string lower;
  bool capitalized = false;
};

// Alphanumeric runs. "it's" yields "it" and "s".
std::vector<Token> tokenize(std::string_view text);

// Offsets of `phrase` in `text` where both ends sit on word boundaries.
// Both arguments must already be lower-case.
std::vector<std::size_t> find_phrase(std::string_view text, std::string_view phrase);

// Case-folded set of alphanumeric tokens.
std::vector<std::string> token_set(std::string_view text);

}  // namespace concord

#endif  // CONCORD_TEXT_H_
