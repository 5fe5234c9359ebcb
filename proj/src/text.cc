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

#include "concord/text.h"

#include <algorithm>

namespace concord {

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string trim(std::string_view text) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  std::size_t b = 0, e = text.size();
  while (b < e && is_space(text[b])) ++b;
  while (e > b && is_space(text[e - 1])) --e;
  return std::string(text.substr(b, e - b));
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_word_char(text[j])) ++j;
    Token tok;
    tok.begin = i;
    tok.end = j;
    tok.lower = to_lower(text.substr(i, j - i));
    tok.capitalized = text[i] >= 'A' && text[i] <= 'Z';
    tokens.push_back(std::move(tok));
    i = j;
  }
  return tokens;
}

std::vector<std::size_t> find_phrase(std::string_view text, std::string_view phrase) {
  std::vector<std::size_t> hits;
  if (phrase.empty()) return hits;
  const bool check_left = is_word_char(phrase.front());
  const bool check_right = is_word_char(phrase.back());
  std::size_t pos = text.find(phrase);
  while (pos != std::string_view::npos) {
    const std::size_t end = pos + phrase.size();
    const bool left_ok = !check_left || pos == 0 || !is_word_char(text[pos - 1]);
    const bool right_ok = !check_right || end == text.size() || !is_word_char(text[end]);
    if (left_ok && right_ok) hits.push_back(pos);
    pos = text.find(phrase, pos + 1);
  }
  return hits;
}

std::vector<std::string> token_set(std::string_view text) {
  std::vector<std::string> out;
  for (Token& t : tokenize(text)) out.push_back(std::move(t.lower));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace concord
