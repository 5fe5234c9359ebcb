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

// Word-list lexicons. Files hold one entry per line; blank lines and lines
// starting with '#' are skipped. Tagged lists put a tag in the first
// whitespace-separated column and the phrase in the rest of the line.

#ifndef CONCORD_LEXICON_H_
#define CONCORD_LEXICON_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "concord/core_model.h"

namespace concord {

class LexiconError : public ConcordError {
 public:
  using ConcordError::ConcordError;
};

std::vector<std::string> parse_word_list(std::string_view content);

struct TaggedEntry {
  std::string tag;
  std::string phrase;
};

std::vector<TaggedEntry> parse_tagged_list(std::string_view content);

// Throws LexiconError when the file cannot be read.
std::string read_text_file(const std::filesystem::path& path);

struct PhraseMatch {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t index = 0;  // entry index in the set
};

// Case-insensitive phrase set with word-boundary matching.
class PhraseSet {
 public:
  PhraseSet() = default;
  explicit PhraseSet(std::vector<std::string> phrases);

  static PhraseSet load(const std::filesystem::path& path);

  // Non-overlapping matches, longest match wins, ordered by position.
  std::vector<PhraseMatch> matches(std::string_view text) const;
  std::size_t count(std::string_view text) const { return matches(text).size(); }
  bool any(std::string_view text) const { return !matches(text).empty(); }
  bool contains(std::string_view phrase) const;

  const std::vector<std::string>& phrases() const { return phrases_; }
  bool empty() const { return phrases_.empty(); }

 private:
  std::vector<std::string> phrases_;  // lower-case
};

// Phrase set whose entries carry a tag (category, slot, grade, ...).
class TaggedPhraseSet {
 public:
  TaggedPhraseSet() = default;
  explicit TaggedPhraseSet(std::vector<TaggedEntry> entries);

  static TaggedPhraseSet load(const std::filesystem::path& path);

  std::vector<PhraseMatch> matches(std::string_view text) const {
    return phrases_.matches(text);
  }
  const std::string& tag(std::size_t index) const { return entries_[index].tag; }
  const std::vector<TaggedEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  // Tag of an exact phrase, or empty.
  std::string tag_of(std::string_view phrase) const;

 private:
  std::vector<TaggedEntry> entries_;
  PhraseSet phrases_;
};

// Directory holding the bundled lexicon files.
std::filesystem::path default_lexicon_dir();

}  // namespace concord

#endif  // CONCORD_LEXICON_H_
