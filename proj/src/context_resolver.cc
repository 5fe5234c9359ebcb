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

#include "concord/context_resolver.h"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <regex>
#include <set>

#include "concord/attributes.h"
#include "concord/text.h"

namespace concord {

namespace {

struct Candidate {
  std::size_t begin = 0;
  std::size_t end = 0;
  EntityCategory category = EntityCategory::kObject;
  MentionKind kind = MentionKind::kExplicit;
  std::string head;
  std::map<std::string, std::string> attributes;
};

bool only_spaces(std::string_view text, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i) {
    if (text[i] != ' ') return false;
  }
  return true;
}

bool has_terminal(std::string_view text, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i) {
    const char c = text[i];
    if (c == '.' || c == '!' || c == '?' || c == '(' || c == ')' || c == ';' ||
        c == ':' || c == '"') {
      return true;
    }
  }
  return false;
}

bool has_punct(std::string_view text, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i) {
    const char c = text[i];
    if (c != ' ' && c != '\'' && c != '-') return true;
  }
  return false;
}

// Tokens with a flag for sentence-initial position.
struct Tokens {
  std::vector<Token> toks;
  std::vector<bool> sentence_start;

  explicit Tokens(std::string_view text) : toks(tokenize(text)) {
    sentence_start.resize(toks.size());
    for (std::size_t i = 0; i < toks.size(); ++i) {
      sentence_start[i] =
          i == 0 || has_terminal(text, toks[i - 1].end, toks[i].begin);
    }
  }

  // Index of the token starting exactly at pos, or npos.
  std::size_t at(std::size_t pos) const {
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (toks[i].begin == pos) return i;
      if (toks[i].begin > pos) break;
    }
    return std::string::npos;
  }
  // Index of the token ending exactly at pos, or npos.
  std::size_t ending(std::size_t pos) const {
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (toks[i].end == pos) return i;
    }
    return std::string::npos;
  }
};

const std::set<std::string>& existential_next() {
  static const std::set<std::string> s{"is", "are", "was", "were", "s", "be",
                                       "been", "any", "will", "would", "might"};
  return s;
}
const std::set<std::string>& copulas() {
  static const std::set<std::string> s{"is", "are", "was", "were"};
  return s;
}
const std::set<std::string>& object_followers() {
  static const std::set<std::string> s{
      "to", "for", "about", "again", "too", "and", "at", "in", "on", "with", "yet",
      "later", "soon", "now", "today", "tomorrow", "yesterday", "up", "out", "back",
      "know", "if", "when", "that", "so", "or", "but", "before", "after", "from"};
  return s;
}
const std::set<std::string>& conjunctions() {
  static const std::set<std::string> s{"and", "but", "so", "oh", "well"};
  return s;
}
const std::set<std::string>& interrogatives() {
  static const std::set<std::string> s{"which", "what"};
  return s;
}

const std::regex& absolute_re() {
  static const std::regex re(
      R"(\b(January|February|March|April|May|June|July|August|September|October|November|December)\s+\d{1,2}(st|nd|rd|th)?(,\s*\d{4})?(,?\s*(at\s+)?\d{1,2}(:\d{2})?\s?(AM|PM|am|pm))?)");
  return re;
}
const std::regex& clock_re() {
  static const std::regex re(R"(\b\d{1,2}(:\d{2})?\s?(AM|PM|am|pm)\b)");
  return re;
}
const std::regex& clock_suffix_re() {
  static const std::regex re(R"(^(\s*,\s*|\s+at\s+)\d{1,2}(:\d{2})?\s?(AM|PM|am|pm)\b)");
  return re;
}
const std::regex& here_in_re() {
  static const std::regex re(R"(\bhere in (the|my|our|this) [a-z]+)");
  return re;
}

template <typename Fn>
void for_each_regex(const std::string& text, const std::regex& re, Fn&& fn) {
  for (auto it = std::sregex_iterator(text.begin(), text.end(), re);
       it != std::sregex_iterator(); ++it) {
    fn(static_cast<std::size_t>(it->position(0)),
       static_cast<std::size_t>(it->position(0) + it->length(0)));
  }
}

class Extractor {
 public:
  Extractor(const Turn& turn, const ResolverLexicons& lex)
      : text_(turn.text), lower_(to_lower(turn.text)), tokens_(turn.text), lex_(lex) {}

  std::vector<Candidate> run() {
    absolute_temporal();
    relative_temporal_with_clock();
    proximal_phrases();
    honorific_persons();
    place_names();
    medications();
    lexicon_nouns(nullptr);
    lexicon_nouns(&lex_.entity_nouns);
    open_interrogatives();
    task_phrases();
    given_names();
    plain_temporal();
    bare_clocks();
    pronouns();
    return select();
  }

 private:
  void add(Candidate c) { cands_.push_back(std::move(c)); }

  // Walks back over up to three adjacent modifier tokens looking for a
  // determiner, demonstrative or interrogative.
  std::pair<std::size_t, MentionKind> extend_left(std::size_t first_tok) const {
    const auto& t = tokens_.toks;
    std::size_t j = first_tok;
    for (int steps = 0; steps < 3 && j > 0; ++steps) {
      if (!only_spaces(text_, t[j - 1].end, t[j].begin)) break;
      --j;
      const std::string& w = t[j].lower;
      if (lex_.demonstratives.contains(w)) return {t[j].begin, MentionKind::kDistal};
      if (interrogatives().count(w)) return {t[j].begin, MentionKind::kInterrogative};
      if (lex_.determiners.contains(w)) return {t[j].begin, MentionKind::kExplicit};
    }
    return {t[first_tok].begin, MentionKind::kExplicit};
  }

  // Proper tokens inside [b, e) that are not sentence-initial.
  bool has_proper(std::size_t b, std::size_t e) const {
    const auto& t = tokens_.toks;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i].begin >= b && t[i].end <= e && t[i].capitalized &&
          !tokens_.sentence_start[i]) {
        return true;
      }
    }
    return false;
  }

  // Extends over an adjacent capitalized name right after pos.
  std::size_t trailing_name(std::size_t pos) const {
    const std::size_t i = tokens_.ending(pos);
    if (i == std::string::npos || i + 1 >= tokens_.toks.size()) return pos;
    const Token& next = tokens_.toks[i + 1];
    if (only_spaces(text_, pos, next.begin) && next.capitalized &&
        lex_.given_names.contains(next.lower)) {
      return next.end;
    }
    return pos;
  }

  void absolute_temporal() {
    for_each_regex(text_, absolute_re(), [&](std::size_t b, std::size_t e) {
      Candidate c{b, e, EntityCategory::kTemporal, MentionKind::kAbsoluteTemporal};
      c.attributes[kAttrAnchored] = text_.substr(b, e - b);
      add(std::move(c));
    });
  }

  void relative_temporal_with_clock() {
    for (const PhraseMatch& m : lex_.temporal.matches(text_)) {
      const std::string tag = lex_.temporal.tag(m.index);
      if (tag == "distal") continue;
      std::smatch sm;
      const std::string rest = text_.substr(m.end);
      if (std::regex_search(rest, sm, clock_suffix_re())) {
        add({m.begin, m.end + static_cast<std::size_t>(sm.length(0)),
             EntityCategory::kTemporal, MentionKind::kRelativeTemporal});
      }
    }
  }

  void plain_temporal() {
    for (const PhraseMatch& m : lex_.temporal.matches(text_)) {
      const bool distal = lex_.temporal.tag(m.index) == "distal";
      add({m.begin, m.end, EntityCategory::kTemporal,
           distal ? MentionKind::kDistal : MentionKind::kRelativeTemporal});
    }
  }

  void bare_clocks() {
    for_each_regex(text_, clock_re(), [&](std::size_t b, std::size_t e) {
      add({b, e, EntityCategory::kTemporal, MentionKind::kRelativeTemporal});
    });
  }

  void proximal_phrases() {
    for_each_regex(lower_, here_in_re(), [&](std::size_t b, std::size_t e) {
      Candidate c{b, e, EntityCategory::kSpatial, MentionKind::kProximal};
      const std::size_t sp = lower_.rfind(' ', e - 1);
      c.head = lower_.substr(sp + 1, e - sp - 1);
      add(std::move(c));
    });
    for (const PhraseMatch& m : lex_.proximal.matches(text_)) {
      add({m.begin, m.end, EntityCategory::kSpatial, MentionKind::kProximal});
    }
  }

  void honorific_persons() {
    const auto& t = tokens_.toks;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      if (!lex_.honorifics.contains(t[i].lower)) continue;
      const std::string_view gap(text_.data() + t[i].end, t[i + 1].begin - t[i].end);
      if ((gap == " " || gap == ". ") && t[i + 1].capitalized) {
        Candidate c{t[i].begin, t[i + 1].end, EntityCategory::kPerson,
                    MentionKind::kExplicit, t[i + 1].lower};
        c.attributes[kAttrIdentity] = text_.substr(c.begin, c.end - c.begin);
        add(std::move(c));
      }
    }
  }

  void place_names() {
    const auto& t = tokens_.toks;
    std::size_t i = 0;
    while (i < t.size()) {
      if (!t[i].capitalized) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < t.size() && t[j + 1].capitalized &&
             only_spaces(text_, t[j].end, t[j + 1].begin)) {
        ++j;
      }
      // Last place suffix inside the run closes the name.
      for (std::size_t k = j + 1; k-- > i;) {
        if (k > i && lex_.place_suffixes.contains(t[k].lower)) {
          Candidate c{t[i].begin, t[k].end, EntityCategory::kSpatial,
                      MentionKind::kExplicit, t[k].lower};
          const std::string surface = text_.substr(c.begin, c.end - c.begin);
          if (spatial_qualified(surface)) c.attributes[kAttrPlace] = surface;
          add(std::move(c));
          break;
        }
      }
      i = j + 1;
    }
  }

  void medications() {
    for (const PhraseMatch& m : lex_.medications.matches(text_)) {
      const std::size_t first = tokens_.at(m.begin);
      if (first == std::string::npos) continue;
      const auto [begin, kind] = extend_left(first);
      Candidate c{begin, m.end, EntityCategory::kMedical, kind,
                  lower_.substr(m.begin, m.end - m.begin)};
      if (kind == MentionKind::kExplicit) {
        c.attributes[kAttrName] = text_.substr(m.begin, m.end - m.begin);
        const std::string sentence = sentence_around(m.begin);
        if (has_dosage(sentence)) c.attributes[kAttrDosage] = sentence;
        if (has_frequency(sentence)) c.attributes[kAttrFrequency] = sentence;
      }
      add(std::move(c));
    }
  }

  // With `tagged` null the set is a symptom list: Object mentions that
  // identify themselves by name.
  void lexicon_nouns(const TaggedPhraseSet* tagged) {
    const std::vector<PhraseMatch> hits =
        tagged ? tagged->matches(text_) : lex_.symptoms.matches(text_);
    for (const PhraseMatch& m : hits) {
      const std::size_t first = tokens_.at(m.begin);
      if (first == std::string::npos) continue;
      EntityCategory category = EntityCategory::kObject;
      if (tagged) {
        const auto parsed = parse_category(tagged->tag(m.index));
        if (!parsed) continue;
        category = *parsed;
      }
      const auto [begin, kind] = extend_left(first);
      const std::string phrase = lower_.substr(m.begin, m.end - m.begin);
      const std::size_t sp = phrase.rfind(' ');
      Candidate c{begin, m.end, category, kind,
                  sp == std::string::npos ? phrase : phrase.substr(sp + 1)};
      if (kind == MentionKind::kExplicit) {
        c.end = trailing_name(m.end);
        if (!tagged || c.end != m.end || has_proper(c.begin, c.end)) {
          if (category != EntityCategory::kSpatial && category != EntityCategory::kTemporal) {
            c.attributes[kAttrIdentity] = text_.substr(c.begin, c.end - c.begin);
          }
        }
      }
      add(std::move(c));
    }
  }

  void open_interrogatives() {
    const auto& t = tokens_.toks;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      if (!interrogatives().count(t[i].lower)) continue;
      if (!only_spaces(text_, t[i].end, t[i + 1].begin)) continue;
      const std::string& next = t[i + 1].lower;
      if (next == "time") {
        add({t[i].begin, t[i + 1].end, EntityCategory::kTemporal,
             MentionKind::kInterrogative, next});
      } else if (t[i].lower == "which" && !lex_.that_verbs.contains(next) &&
                 !lex_.determiners.contains(next) && next != "one" && next != "you") {
        add({t[i].begin, t[i + 1].end, EntityCategory::kObject,
             MentionKind::kInterrogative, next});
      }
    }
  }

  void task_phrases() {
    for (const PhraseMatch& m : lex_.task_phrases.matches(text_)) {
      const std::string phrase = lower_.substr(m.begin, m.end - m.begin);
      add({m.begin, m.end, EntityCategory::kTask, MentionKind::kExplicit,
           phrase.substr(0, phrase.find(' '))});
    }
  }

  void given_names() {
    for (const Token& tok : tokens_.toks) {
      if (tok.capitalized && lex_.given_names.contains(tok.lower)) {
        Candidate c{tok.begin, tok.end, EntityCategory::kPerson, MentionKind::kExplicit,
                    tok.lower};
        c.attributes[kAttrIdentity] = text_.substr(tok.begin, tok.end - tok.begin);
        add(std::move(c));
      }
    }
  }

  void pronouns() {
    const auto& t = tokens_.toks;
    for (const PhraseMatch& m : lex_.pronouns.matches(text_)) {
      const std::size_t i = tokens_.at(m.begin);
      if (i == std::string::npos) continue;
      const auto category = parse_category(lex_.pronouns.tag(m.index));
      if (!category) continue;
      const std::string& w = t[i].lower;
      const bool last = i + 1 >= t.size();
      const std::string next = last ? "" : t[i + 1].lower;
      const bool boundary = last || has_punct(text_, t[i].end, t[i + 1].begin);
      if (w == "there") {
        if (!boundary && existential_next().count(next)) continue;
        if (i > 0 && copulas().count(t[i - 1].lower)) continue;
      } else if (w == "her") {
        if (!boundary && !object_followers().count(next)) continue;
      } else if (w == "that") {
        if (!boundary && !lex_.that_verbs.contains(next)) continue;
      }
      add({m.begin, m.end, *category, MentionKind::kDistal});
    }
  }

  std::string sentence_around(std::size_t pos) const {
    std::size_t b = text_.find_last_of(".!?", pos);
    b = b == std::string::npos ? 0 : b + 1;
    std::size_t e = text_.find_first_of(".!?", pos);
    // Decimal points inside dosages are not sentence breaks.
    while (e != std::string::npos && e + 1 < text_.size() && text_[e] == '.' &&
           std::isdigit(static_cast<unsigned char>(text_[e + 1]))) {
      e = text_.find_first_of(".!?", e + 1);
    }
    if (e == std::string::npos) e = text_.size();
    return text_.substr(b, e - b);
  }

  // Longest span first, insertion order on ties; spans never overlap.
  std::vector<Candidate> select() {
    std::vector<std::size_t> order(cands_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return cands_[a].end - cands_[a].begin > cands_[b].end - cands_[b].begin;
    });
    std::vector<Candidate> kept;
    for (std::size_t idx : order) {
      const Candidate& c = cands_[idx];
      const bool overlaps = std::any_of(kept.begin(), kept.end(), [&](const Candidate& k) {
        return c.begin < k.end && k.begin < c.end;
      });
      if (!overlaps) kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end(),
              [](const Candidate& a, const Candidate& b) { return a.begin < b.begin; });
    return kept;
  }

  const std::string& text_;
  std::string lower_;
  Tokens tokens_;
  const ResolverLexicons& lex_;
  std::vector<Candidate> cands_;
};

// Position just past a leading "(stage direction)" and conjunctions.
std::size_t content_start(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && text[i] == ' ') ++i;
  if (i < text.size() && text[i] == '(') {
    const std::size_t close = text.find(')', i);
    if (close != std::string_view::npos) i = close + 1;
  }
  const std::vector<Token> toks = tokenize(text.substr(i));
  for (const Token& t : toks) {
    if (!conjunctions().count(t.lower)) return i + t.begin;
  }
  return i;
}

std::string strip_leading_function_words(const std::string& lower,
                                         const ResolverLexicons& lex) {
  std::vector<Token> toks = tokenize(lower);
  std::size_t k = 0;
  while (k < toks.size() &&
         (lex.determiners.contains(toks[k].lower) ||
          lex.demonstratives.contains(toks[k].lower))) {
    ++k;
  }
  if (k >= toks.size()) return lower;
  return lower.substr(toks[k].begin);
}

std::string source_label(Role owner, std::string_view ground) {
  return std::string(role_label(owner)) + " " + std::string(ground);
}

void consult(ResolutionProbe* probe, std::string ground) {
  if (probe) probe->consulted.push_back(std::move(ground));
}

ResolutionRecord make_record(const EntityMention& m, std::string entity,
                             std::string source) {
  return {m.turn_id, m.surface, std::move(entity), std::move(source)};
}

struct ClockTime {
  int hour = 0;
  int minute = 0;
};

std::optional<ClockTime> parse_clock(std::string_view text) {
  static const std::regex re(R"((\d{1,2})(:(\d{2}))?\s?(AM|PM|am|pm))");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_search(text.begin(), text.end(), m, re)) return std::nullopt;
  int hour = std::stoi(m[1].str());
  const int minute = m[3].matched ? std::stoi(m[3].str()) : 0;
  if (hour < 1 || hour > 12 || minute > 59) return std::nullopt;
  const bool pm = m[4].str()[0] == 'P' || m[4].str()[0] == 'p';
  if (hour == 12) hour = 0;
  return ClockTime{hour + (pm ? 12 : 0), minute};
}

// Day offset from a "day:+1" style tag.
std::optional<int> day_offset(const std::string& tag) {
  if (tag.rfind("day:", 0) != 0) return std::nullopt;
  try {
    return std::stoi(tag.substr(4));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<ResolutionRecord> anchor_temporal(const EntityMention& m,
                                                const MobileContextSnapshot& snap,
                                                const ResolveContext& ctx,
                                                const ResolverLexicons& lex,
                                                ResolutionProbe* probe) {
  using namespace std::chrono;
  const std::optional<DateTime> clock = ctx.reference_clock ? ctx.reference_clock
                                                            : snap.local_time;
  if (!clock) return std::nullopt;
  consult(probe, "clock");

  std::string tag;
  const std::vector<PhraseMatch> hits = lex.temporal.matches(m.surface);
  if (!hits.empty() && hits.front().begin == 0) tag = lex.temporal.tag(hits.front().index);
  const std::optional<ClockTime> hm = parse_clock(m.surface);
  const std::optional<int> offset = day_offset(tag);
  if (!hm && !offset && tag != "now") return std::nullopt;

  const sys_days today = floor<days>(*clock);
  consult(probe, "calendar");
  if (tag == "now" && !hm) {
    for (const CalendarEvent& ev : snap.calendar) {
      if (ev.start <= *clock && *clock <= ev.end) {
        return make_record(m, format_clock(*clock) + " (" + ev.title + ")",
                           source_label(ctx.owner, "Calendar"));
      }
    }
    return make_record(m, format_datetime_human(*clock), source_label(ctx.owner, "Clock"));
  }
  const sys_days day = today + days{offset.value_or(0)};
  if (!hm) {
    return make_record(m, format_date_human(DateTime{day}), source_label(ctx.owner, "Clock"));
  }
  const DateTime when = DateTime{day} + hours{hm->hour} + minutes{hm->minute};
  for (const CalendarEvent& ev : snap.calendar) {
    if (ev.start == when) {
      return make_record(m, format_datetime_human(when), source_label(ctx.owner, "Calendar"));
    }
  }
  return make_record(m, format_datetime_human(when), source_label(ctx.owner, "Clock"));
}

std::optional<ResolutionRecord> from_aux_logs(const EntityMention& m,
                                              const MobileContextSnapshot& snap,
                                              const ResolveContext& ctx,
                                              const ResolverLexicons& lex,
                                              ResolutionProbe* probe) {
  if (snap.aux_logs.empty()) return std::nullopt;
  consult(probe, "aux_logs");
  const std::string normalized = strip_leading_function_words(to_lower(m.surface), lex);
  for (const AuxLog& log : snap.aux_logs) {
    for (const LogRecord& r : log.records) {
      const std::string key = to_lower(r.key);
      if (key == normalized || (!m.head.empty() && key == m.head)) {
        return make_record(m, r.value, source_label(ctx.owner, log.name));
      }
    }
  }
  return std::nullopt;
}

std::optional<ResolutionRecord> from_calendar_alias(const EntityMention& m,
                                                    const MobileContextSnapshot& snap,
                                                    const ResolveContext& ctx,
                                                    ResolutionProbe* probe) {
  if (m.head.empty() || snap.calendar.empty()) return std::nullopt;
  consult(probe, "calendar");
  for (const CalendarEvent& ev : snap.calendar) {
    const bool in_title = !find_phrase(to_lower(ev.title), m.head).empty();
    const bool in_location =
        ev.location && !find_phrase(to_lower(*ev.location), m.head).empty();
    if (!in_title && !in_location) continue;
    std::string entity;
    if (ev.location && (in_location || m.category == EntityCategory::kSpatial)) {
      entity = *ev.location;
    } else {
      entity = ev.title;
      if (ev.location) entity += ", " + *ev.location;
      entity += ", " + format_datetime_human(ev.start);
    }
    return make_record(m, std::move(entity), source_label(ctx.owner, "Calendar"));
  }
  return std::nullopt;
}

std::optional<ResolutionRecord> from_location(const EntityMention& m,
                                              const MobileContextSnapshot& snap,
                                              const ResolveContext& ctx,
                                              ResolutionProbe* probe) {
  if (snap.location_semantic.empty()) return std::nullopt;
  std::string ground;
  if (snap.gps_coords && snap.wifi_ssid) {
    consult(probe, "gps");
    consult(probe, "wifi");
    ground = "GPS + Wifi";
  } else if (snap.gps_coords) {
    consult(probe, "gps");
    ground = "GPS";
  } else if (snap.wifi_ssid) {
    consult(probe, "wifi");
    ground = "Wifi";
  } else {
    consult(probe, "location");
    ground = "Location";
  }
  return make_record(m, snap.location_semantic, source_label(ctx.owner, ground));
}

bool antecedent_kind(MentionKind k) {
  return k == MentionKind::kExplicit || k == MentionKind::kAbsoluteTemporal ||
         k == MentionKind::kRelativeTemporal;
}

// Rules that use only the mention and the owner's snapshot.
std::optional<ResolutionRecord> resolve_grounded(const EntityMention& m,
                                                 const MobileContextSnapshot& snap,
                                                 const ResolveContext& ctx,
                                                 const ResolverLexicons& lex,
                                                 ResolutionProbe* probe) {
  if ((m.kind == MentionKind::kExplicit || m.kind == MentionKind::kAbsoluteTemporal) &&
      missing_attributes(m, nullptr).empty()) {
    consult(probe, "literal");
    return make_record(m, m.surface, "Literal");
  }
  const bool nominal = m.kind == MentionKind::kExplicit ||
                       (m.kind == MentionKind::kDistal && !m.head.empty());
  if (nominal) {
    if (auto r = from_aux_logs(m, snap, ctx, lex, probe)) return r;
  }
  if (m.kind == MentionKind::kRelativeTemporal) {
    if (auto r = anchor_temporal(m, snap, ctx, lex, probe)) return r;
  }
  if (nominal) {
    if (auto r = from_calendar_alias(m, snap, ctx, probe)) return r;
  }
  if (m.kind == MentionKind::kProximal) {
    if (auto r = from_location(m, snap, ctx, probe)) return r;
  }
  return std::nullopt;
}

}  // namespace

ReferenceWindow make_window(const OneSidedTranscript& view, std::size_t focus_index,
                            std::size_t history_turns) {
  if (focus_index >= view.turns.size()) {
    throw InvalidArgumentError("focus index outside the transcript");
  }
  ReferenceWindow w;
  w.focus = view.turns[focus_index];
  const std::size_t first = focus_index > history_turns ? focus_index - history_turns : 0;
  w.history.assign(view.turns.begin() + static_cast<std::ptrdiff_t>(first),
                   view.turns.begin() + static_cast<std::ptrdiff_t>(focus_index));
  const int prev = focus_index > 0 ? view.turns[focus_index - 1].turn_id : 0;
  for (int id : view.masked_slots) {
    if (id > prev && id < w.focus.turn_id) w.masked_before_focus = id;
  }
  return w;
}

ResolverLexicons ResolverLexicons::load(const std::filesystem::path& dir) {
  ResolverLexicons lex;
  lex.temporal = TaggedPhraseSet::load(dir / "temporal_relative.txt");
  lex.pronouns = TaggedPhraseSet::load(dir / "pronouns.txt");
  lex.entity_nouns = TaggedPhraseSet::load(dir / "entity_nouns.txt");
  lex.demonstratives = PhraseSet::load(dir / "demonstratives.txt");
  lex.determiners = PhraseSet::load(dir / "determiners.txt");
  lex.proximal = PhraseSet::load(dir / "proximal.txt");
  lex.symptoms = PhraseSet::load(dir / "symptoms.txt");
  lex.medications = PhraseSet::load(dir / "medications.txt");
  lex.given_names = PhraseSet::load(dir / "given_names.txt");
  lex.honorifics = PhraseSet::load(dir / "honorifics.txt");
  lex.place_suffixes = PhraseSet::load(dir / "place_suffixes.txt");
  lex.task_phrases = PhraseSet::load(dir / "task_phrases.txt");
  lex.ack_cues = PhraseSet::load(dir / "ack_cues.txt");
  lex.that_verbs = PhraseSet::load(dir / "that_verbs.txt");
  return lex;
}

const ResolverLexicons& ResolverLexicons::defaults() {
  static const ResolverLexicons lex = load(default_lexicon_dir());
  return lex;
}

std::vector<EntityMention> extract_turn_mentions(const Turn& turn,
                                                 const ResolverLexicons& lex) {
  std::vector<EntityMention> out;
  for (Candidate& c : Extractor(turn, lex).run()) {
    EntityMention m;
    m.turn_id = turn.turn_id;
    m.char_begin = c.begin;
    m.char_end = c.end;
    m.surface = turn.text.substr(c.begin, c.end - c.begin);
    m.category = c.category;
    m.attributes = std::move(c.attributes);
    m.kind = c.kind;
    m.head = std::move(c.head);
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<EntityMention> extract_mentions(const ReferenceWindow& window,
                                            const ResolverLexicons& lex) {
  std::vector<EntityMention> mentions = extract_turn_mentions(window.focus, lex);
  if (!window.masked_before_focus) return mentions;

  // An acknowledgment right after a masked slot points at the hidden turn.
  const std::string& text = window.focus.text;
  const std::size_t start = content_start(text);
  for (EntityMention& m : mentions) {
    if (m.char_begin == start && m.kind == MentionKind::kDistal && m.head.empty() &&
        m.category != EntityCategory::kTemporal) {
      m.kind = MentionKind::kAcknowledgment;
      return mentions;
    }
  }
  for (const PhraseMatch& cue : lex.ack_cues.matches(text)) {
    if (cue.begin != start) continue;
    const bool taken = std::any_of(mentions.begin(), mentions.end(), [&](const EntityMention& m) {
      return m.char_begin < cue.end && cue.begin < m.char_end;
    });
    if (taken) break;
    EntityMention ack;
    ack.turn_id = window.focus.turn_id;
    ack.char_begin = cue.begin;
    ack.char_end = cue.end;
    ack.surface = text.substr(cue.begin, cue.end - cue.begin);
    ack.kind = MentionKind::kAcknowledgment;
    // A bare "Okay" with nothing incomplete after it confirms nothing we need.
    for (const EntityMention& m : mentions) {
      if (m.kind == MentionKind::kExplicit && !missing_attributes(m, nullptr).empty()) {
        ack.category = m.category;
        ack.head = m.head;
        ack.linked_surface = m.surface;
        mentions.insert(mentions.begin(), std::move(ack));
        break;
      }
    }
    break;
  }
  return mentions;
}

std::optional<ResolutionRecord> resolve_local(const EntityMention& mention,
                                              const ReferenceWindow& window,
                                              const MobileContextSnapshot& snapshot,
                                              const ResolveContext& context,
                                              const ResolverLexicons& lex,
                                              ResolutionProbe* probe) {
  if (mention.kind == MentionKind::kInterrogative ||
      mention.kind == MentionKind::kAcknowledgment) {
    return std::nullopt;
  }
  if (auto r = resolve_grounded(mention, snapshot, context, lex, probe)) return r;
  if (mention.kind != MentionKind::kDistal) return std::nullopt;

  // Nearest antecedent: earlier in the focus turn, then newest history first.
  consult(probe, "prior_turns");
  const auto matches = [&](const EntityMention& c) {
    if (!antecedent_kind(c.kind)) return false;
    if (!mention.head.empty()) return c.head == mention.head;
    return c.category == mention.category;
  };
  const auto ground = [&](const EntityMention& c) {
    std::optional<ResolutionRecord> inner =
        resolve_grounded(c, snapshot, context, lex, nullptr);
    std::string entity = inner ? inner->resolved_entity : c.surface;
    return make_record(mention, std::move(entity), "Prior Turn " + std::to_string(c.turn_id));
  };
  std::vector<EntityMention> focus = extract_turn_mentions(window.focus, lex);
  for (auto it = focus.rbegin(); it != focus.rend(); ++it) {
    if (it->char_end <= mention.char_begin && matches(*it)) return ground(*it);
  }
  for (auto t = window.history.rbegin(); t != window.history.rend(); ++t) {
    std::vector<EntityMention> ms = extract_turn_mentions(*t, lex);
    for (auto it = ms.rbegin(); it != ms.rend(); ++it) {
      if (matches(*it)) return ground(*it);
    }
  }
  return std::nullopt;
}

std::optional<ResolutionRecord> RuleBasedResolver::resolve(
    const EntityMention& mention, const ReferenceWindow& window,
    const MobileContextSnapshot& snapshot, const ResolveContext& context,
    ResolutionProbe* probe) const {
  return resolve_local(mention, window, snapshot, context, *lex_, probe);
}

std::vector<ResolvedMention> resolve_window(const ReferenceWindow& window,
                                            const MobileContextSnapshot& snapshot,
                                            const ResolveContext& context,
                                            const ResolverBackend& backend,
                                            const ResolverLexicons& lex) {
  std::vector<ResolvedMention> out;
  for (EntityMention& m : extract_mentions(window, lex)) {
    std::optional<ResolutionRecord> r = backend.resolve(m, window, snapshot, context, nullptr);
    out.push_back({std::move(m), std::move(r)});
  }
  return out;
}

double resolution_similarity(std::string_view predicted, std::string_view gold) {
  if (predicted.empty() || gold.empty()) {
    throw InvalidArgumentError("similarity needs two non-empty strings");
  }
  const std::vector<std::string> p = token_set(predicted);
  const std::vector<std::string> g = token_set(gold);
  if (p.empty() && g.empty()) return 1.0;
  std::vector<std::string> inter;
  std::set_intersection(p.begin(), p.end(), g.begin(), g.end(), std::back_inserter(inter));
  const std::size_t uni = p.size() + g.size() - inter.size();
  return static_cast<double>(inter.size()) / static_cast<double>(uni);
}

}  // namespace concord
