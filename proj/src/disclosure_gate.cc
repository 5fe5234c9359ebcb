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

#include "concord/disclosure_gate.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "concord/text.h"

namespace concord {

namespace {

bool overlaps(const GradedSpan& a, const GradedSpan& b) {
  return a.begin < b.end && b.begin < a.end;
}

}  // namespace

SensitivityLexicon SensitivityLexicon::parse(std::string_view content) {
  SensitivityLexicon lex;
  std::vector<std::string> phrases;
  std::map<std::string, Sensitivity> seen;
  std::istringstream in{std::string(content)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t sp = t.find(' ');
    if (sp == std::string::npos) {
      throw LexiconError("sensitivity line " + std::to_string(line_no) + ": missing phrase");
    }
    const std::string head = t.substr(0, sp);
    const std::string rest = trim(t.substr(sp + 1));
    const std::size_t sp2 = rest.find(' ');
    if (head == "slot" || head == "pattern") {
      if (sp2 == std::string::npos) {
        throw LexiconError("sensitivity line " + std::to_string(line_no) + ": incomplete rule");
      }
      const std::string first = rest.substr(0, sp2);
      const std::string second = trim(rest.substr(sp2 + 1));
      if (head == "slot") {
        const auto grade = parse_sensitivity(second);
        if (!grade) throw LexiconError("sensitivity line " + std::to_string(line_no) + ": bad grade");
        lex.slot_grades_[first] = *grade;
      } else {
        const auto grade = parse_sensitivity(first);
        if (!grade) throw LexiconError("sensitivity line " + std::to_string(line_no) + ": bad grade");
        try {
          lex.patterns_.push_back({*grade, std::regex(second, std::regex::ECMAScript)});
        } catch (const std::regex_error& e) {
          throw LexiconError("sensitivity line " + std::to_string(line_no) + ": " + e.what());
        }
      }
      continue;
    }
    const auto grade = parse_sensitivity(head);
    if (!grade) throw LexiconError("sensitivity line " + std::to_string(line_no) + ": bad grade");
    const auto [it, fresh] = seen.emplace(to_lower(rest), *grade);
    if (!fresh && it->second != *grade) {
      throw LexiconError("sensitivity line " + std::to_string(line_no) + ": '" + rest +
                         "' graded twice");
    }
    lex.keyword_grades_.push_back(*grade);
    phrases.push_back(rest);
  }
  lex.keywords_ = PhraseSet(std::move(phrases));
  return lex;
}

SensitivityLexicon SensitivityLexicon::load(const std::filesystem::path& path) {
  return parse(read_text_file(path));
}

const SensitivityLexicon& SensitivityLexicon::defaults() {
  static const SensitivityLexicon lex = load(default_lexicon_dir() / "sensitivity.txt");
  return lex;
}

std::vector<GradedSpan> SensitivityLexicon::scan(std::string_view text) const {
  std::vector<GradedSpan> all;
  for (const PhraseMatch& m : keywords_.matches(text)) {
    all.push_back({m.begin, m.end, keyword_grades_[m.index]});
  }
  const std::string s(text);
  for (const Pattern& p : patterns_) {
    for (auto it = std::sregex_iterator(s.begin(), s.end(), p.re); it != std::sregex_iterator();
         ++it) {
      if (it->length() == 0) continue;
      const auto b = static_cast<std::size_t>(it->position());
      all.push_back({b, b + static_cast<std::size_t>(it->length()), p.grade});
    }
  }
  // Higher grade first, then longer, then earlier.
  std::stable_sort(all.begin(), all.end(), [](const GradedSpan& a, const GradedSpan& b) {
    if (a.grade != b.grade) return rank(a.grade) > rank(b.grade);
    return a.end - a.begin > b.end - b.begin;
  });
  std::vector<GradedSpan> kept;
  for (const GradedSpan& g : all) {
    if (std::none_of(kept.begin(), kept.end(), [&](const GradedSpan& k) { return overlaps(k, g); })) {
      kept.push_back(g);
    }
  }
  std::sort(kept.begin(), kept.end(),
            [](const GradedSpan& a, const GradedSpan& b) { return a.begin < b.begin; });
  return kept;
}

std::optional<Sensitivity> SensitivityLexicon::slot_grade(std::string_view slot) const {
  const auto it = slot_grades_.find(std::string(slot));
  if (it == slot_grades_.end()) return std::nullopt;
  return it->second;
}

bool SensitivityLexicon::is_critical_class(std::string_view phrase) const {
  const std::string p = to_lower(trim(phrase));
  const auto& ps = keywords_.phrases();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i] == p) return keyword_grades_[i] == Sensitivity::kCritical;
  }
  return false;
}

Sensitivity classify_sensitivity(const ProtocolQuery& query, std::string_view candidate_answer,
                                 const SensitivityLexicon& lexicon) {
  if (trim(candidate_answer).empty()) {
    throw InvalidArgumentError("candidate answer is empty");
  }
  Sensitivity grade = lexicon.slot_grade(query.target_slot).value_or(Sensitivity::kLow);
  for (const GradedSpan& g : lexicon.scan(candidate_answer)) {
    if (g.grade == Sensitivity::kCritical) return Sensitivity::kCritical;
    if (rank(g.grade) > rank(grade)) grade = g.grade;
  }
  return grade;
}

bool detect_privacy_intent(const std::vector<Turn>& owner_turns_near, const PhraseSet& cues) {
  if (owner_turns_near.empty()) throw InvalidArgumentError("intent window is empty");
  return std::any_of(owner_turns_near.begin(), owner_turns_near.end(),
                     [&](const Turn& t) { return cues.any(t.text); });
}

const PhraseSet& default_privacy_cues() {
  static const PhraseSet cues = PhraseSet::load(default_lexicon_dir() / "privacy_cues.txt");
  return cues;
}

Sensitivity elevate(Sensitivity sensitivity, bool intent) {
  if (!intent) return sensitivity;
  switch (sensitivity) {
    case Sensitivity::kLow: return Sensitivity::kMid;
    case Sensitivity::kMid: return Sensitivity::kHigh;
    case Sensitivity::kHigh: return Sensitivity::kHigh;
    case Sensitivity::kCritical: return Sensitivity::kCritical;
  }
  return sensitivity;
}

LockDecision hard_lock(Sensitivity sensitivity, RelationshipLevel /*level*/) {
  return sensitivity == Sensitivity::kCritical ? LockDecision::kAbort : LockDecision::kProceed;
}

DisclosureKind matrix_decide(Sensitivity sensitivity, RelationshipLevel level) {
  if (sensitivity == Sensitivity::kCritical) {
    throw InvalidArgumentError("Critical content never reaches the sharing matrix");
  }
  switch (level) {
    case RelationshipLevel::kL1:
      return DisclosureKind::kDirectReveal;
    case RelationshipLevel::kL2:
      if (sensitivity == Sensitivity::kLow) return DisclosureKind::kDirectReveal;
      if (sensitivity == Sensitivity::kMid) return DisclosureKind::kApprovalLoop;
      return DisclosureKind::kSuppress;
    case RelationshipLevel::kL3:
      if (sensitivity == Sensitivity::kLow) return DisclosureKind::kApprovalLoop;
      return DisclosureKind::kSuppress;
  }
  return DisclosureKind::kSuppress;
}

namespace {

DisclosureOutcome reveal(const DisclosureRequest& request, const SensitivityLexicon& lexicon) {
  const std::string& text = request.candidate_answer;
  std::vector<GradedSpan> higher;
  for (const GradedSpan& g : lexicon.scan(text)) {
    if (rank(g.grade) > rank(request.sensitivity)) higher.push_back(g);
  }
  if (higher.empty()) return DisclosureOutcome::direct(text);
  std::string masked;
  std::vector<CharSpan> spans;
  std::size_t at = 0;
  for (const GradedSpan& g : higher) {
    masked += text.substr(at, g.begin - at);
    const std::size_t b = masked.size();
    masked += kRedacted;
    spans.emplace_back(b, masked.size());
    at = g.end;
  }
  masked += text.substr(at);
  return DisclosureOutcome::partial(std::move(masked), std::move(spans));
}

}  // namespace

DisclosureOutcome finalize(const DisclosureRequest& request, DisclosureKind matrix_outcome,
                           std::optional<ApprovalSignal> approval,
                           const SensitivityLexicon& lexicon, std::vector<std::string>* log) {
  if (matrix_outcome == DisclosureKind::kAbort ||
      request.effective_sensitivity() == Sensitivity::kCritical) {
    return DisclosureOutcome::abort();
  }
  if (approval && matrix_outcome != DisclosureKind::kApprovalLoop && log) {
    log->push_back(std::string("approval signal ignored for ") +
                   std::string(disclosure_name(matrix_outcome)));
  }
  switch (matrix_outcome) {
    case DisclosureKind::kDirectReveal:
    case DisclosureKind::kPartialReveal:
      return reveal(request, lexicon);
    case DisclosureKind::kApprovalLoop:
      if (approval == ApprovalSignal::kGranted) return reveal(request, lexicon);
      return DisclosureOutcome::suppress();
    case DisclosureKind::kSuppress:
    case DisclosureKind::kAbort:
      break;
  }
  return DisclosureOutcome::suppress();
}

DisclosureKind gate_outcome(const DisclosureRequest& request) {
  const Sensitivity s = request.effective_sensitivity();
  if (hard_lock(s, request.relationship.level) == LockDecision::kAbort) {
    return DisclosureKind::kAbort;
  }
  return matrix_decide(s, request.relationship.level);
}

DisclosureOutcome decide(const DisclosureRequest& request, std::optional<ApprovalSignal> approval,
                         const SensitivityLexicon& lexicon, std::vector<std::string>* log) {
  return finalize(request, gate_outcome(request), approval, lexicon, log);
}

}  // namespace concord
