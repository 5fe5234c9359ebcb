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

#include "concord/lexicon.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "concord/text.h"

namespace concord {

namespace {

template <typename Fn>
void for_each_line(std::string_view content, Fn&& fn) {
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string line = trim(content.substr(pos, nl - pos));
    if (!line.empty() && line[0] != '#') fn(line);
    pos = nl + 1;
  }
}

}  // namespace

std::vector<std::string> parse_word_list(std::string_view content) {
  std::vector<std::string> out;
  for_each_line(content, [&](const std::string& line) { out.push_back(line); });
  return out;
}

std::vector<TaggedEntry> parse_tagged_list(std::string_view content) {
  std::vector<TaggedEntry> out;
  for_each_line(content, [&](const std::string& line) {
    const std::size_t sep = line.find_first_of(" \t");
    if (sep == std::string::npos) {
      throw LexiconError("tagged lexicon line has no phrase: " + line);
    }
    out.push_back({line.substr(0, sep), trim(std::string_view(line).substr(sep))});
  });
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LexiconError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PhraseSet::PhraseSet(std::vector<std::string> phrases) {
  phrases_.reserve(phrases.size());
  for (const std::string& p : phrases) phrases_.push_back(to_lower(p));
}

PhraseSet PhraseSet::load(const std::filesystem::path& path) {
  return PhraseSet(parse_word_list(read_text_file(path)));
}

std::vector<PhraseMatch> PhraseSet::matches(std::string_view text) const {
  const std::string lower = to_lower(text);
  std::vector<PhraseMatch> all;
  for (std::size_t i = 0; i < phrases_.size(); ++i) {
    for (std::size_t pos : find_phrase(lower, phrases_[i])) {
      all.push_back({pos, pos + phrases_[i].size(), i});
    }
  }
  // Longest first, then leftmost; accept greedily when nothing overlaps.
  std::sort(all.begin(), all.end(), [](const PhraseMatch& a, const PhraseMatch& b) {
    const std::size_t la = a.end - a.begin, lb = b.end - b.begin;
    if (la != lb) return la > lb;
    if (a.begin != b.begin) return a.begin < b.begin;
    return a.index < b.index;
  });
  std::vector<PhraseMatch> kept;
  for (const PhraseMatch& m : all) {
    const bool overlaps = std::any_of(kept.begin(), kept.end(), [&](const PhraseMatch& k) {
      return m.begin < k.end && k.begin < m.end;
    });
    if (!overlaps) kept.push_back(m);
  }
  std::sort(kept.begin(), kept.end(), [](const PhraseMatch& a, const PhraseMatch& b) {
    return a.begin < b.begin;
  });
  return kept;
}

bool PhraseSet::contains(std::string_view phrase) const {
  const std::string lower = to_lower(phrase);
  return std::find(phrases_.begin(), phrases_.end(), lower) != phrases_.end();
}

TaggedPhraseSet::TaggedPhraseSet(std::vector<TaggedEntry> entries)
    : entries_(std::move(entries)) {
  std::vector<std::string> phrases;
  phrases.reserve(entries_.size());
  for (const TaggedEntry& e : entries_) phrases.push_back(e.phrase);
  phrases_ = PhraseSet(std::move(phrases));
}

TaggedPhraseSet TaggedPhraseSet::load(const std::filesystem::path& path) {
  return TaggedPhraseSet(parse_tagged_list(read_text_file(path)));
}

std::string TaggedPhraseSet::tag_of(std::string_view phrase) const {
  const std::string lower = to_lower(phrase);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (phrases_.phrases()[i] == lower) return entries_[i].tag;
  }
  return {};
}

std::filesystem::path default_lexicon_dir() {
  if (const char* env = std::getenv("CONCORD_LEXICON_DIR")) return env;
  return std::filesystem::path(CONCORD_DATA_DIR) / "lexicons";
}

}  // namespace concord
