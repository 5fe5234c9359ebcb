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

#include "concord/speaker_gate.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

namespace concord {

namespace {

// Interval arithmetic tolerance for window placement.
constexpr double kTimeEps = 1e-9;

void check_score(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw InvalidArgumentError(fmt::format("score {} outside [0, 1]", s));
  }
}

}  // namespace

void GateConfig::validate() const {
  if (!(overlap > 0.0 && overlap < window_len)) {
    throw InvalidArgumentError("gate config needs 0 < overlap < window_len");
  }
  if (!(target_fpr > 0.0 && target_fpr < 1.0)) {
    throw InvalidArgumentError("gate config needs 0 < target_fpr < 1");
  }
}

Calibration calibrate_threshold(std::span<const double> impostor_scores,
                                std::span<const double> genuine_scores,
                                double target_fpr) {
  if (impostor_scores.empty()) {
    throw InvalidArgumentError("calibration needs at least one impostor score");
  }
  if (!(target_fpr >= 0.0 && target_fpr <= 1.0)) {
    throw InvalidArgumentError("target_fpr outside [0, 1]");
  }
  std::vector<double> impostors(impostor_scores.begin(), impostor_scores.end());
  for (double s : impostors) check_score(s);
  for (double s : genuine_scores) check_score(s);
  std::sort(impostors.begin(), impostors.end());

  const std::size_t n = impostors.size();
  // Largest tolerated count of accepted impostors. The epsilon keeps
  // target * n from rounding below an exact integer.
  const auto allowed =
      static_cast<std::size_t>(std::floor(target_fpr * static_cast<double>(n) + 1e-9));

  // Candidates ascending: 0, then unique impostor scores. Accepted impostors
  // at threshold t are those strictly above t, i.e. n - upper_bound(t).
  std::vector<double> candidates{0.0};
  for (double s : impostors) {
    if (s > candidates.back()) candidates.push_back(s);
  }
  std::optional<double> chosen;
  for (double t : candidates) {
    const auto above = static_cast<std::size_t>(
        impostors.end() - std::upper_bound(impostors.begin(), impostors.end(), t));
    if (above <= allowed) {
      chosen = t;
      break;
    }
  }
  // The largest impostor score always admits zero impostors, so this only
  // triggers for malformed input that slipped past the checks above.
  if (!chosen) {
    throw CalibrationInfeasibleError(
        fmt::format("no threshold reaches FPR <= {}", target_fpr));
  }

  Calibration out;
  out.threshold = *chosen;
  const auto fp = static_cast<std::size_t>(
      impostors.end() - std::upper_bound(impostors.begin(), impostors.end(), *chosen));
  out.achieved_fpr = static_cast<double>(fp) / static_cast<double>(n);
  if (!genuine_scores.empty()) {
    const auto tp = std::count_if(genuine_scores.begin(), genuine_scores.end(),
                                  [&](double s) { return s > *chosen; });
    out.achieved_tpr =
        static_cast<double>(tp) / static_cast<double>(genuine_scores.size());
  }
  return out;
}

std::vector<TimeSpan> segment_windows(double duration, const GateConfig& config) {
  config.validate();
  if (!(duration > 0.0)) throw InvalidArgumentError("duration must be positive");
  const double len = config.window_len;
  if (duration < len - kTimeEps) return {{0.0, duration}};

  const double hop = len - config.overlap;
  std::vector<TimeSpan> out;
  for (std::size_t k = 0;; ++k) {
    const double start = static_cast<double>(k) * hop;
    if (start + len > duration + kTimeEps) break;
    out.emplace_back(start, start + len);
  }
  if (out.back().second < duration - kTimeEps) {
    out.emplace_back(duration - len, duration);
  }
  return out;
}

std::vector<GateDecision> gate_stream(std::span<const ScoreWindow> windows,
                                      double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw InvalidArgumentError("threshold outside [0, 1]");
  }
  std::vector<GateDecision> out;
  out.reserve(windows.size());
  for (const ScoreWindow& w : windows) {
    out.push_back(w.score > threshold ? GateDecision::kAccept : GateDecision::kReject);
  }
  return out;
}

VerificationMetrics verification_metrics(std::span<const GateDecision> decisions,
                                         std::span<const WindowLabel> labels) {
  if (decisions.size() != labels.size()) {
    throw InvalidArgumentError("decisions and labels differ in length");
  }
  VerificationMetrics m;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    const bool accept = decisions[i] == GateDecision::kAccept;
    if (labels[i] == WindowLabel::kOwner) {
      accept ? ++m.tp : ++m.fn;
    } else {
      accept ? ++m.fp : ++m.tn;
    }
  }
  const std::size_t pos = m.tp + m.fn;
  const std::size_t neg = m.fp + m.tn;
  if (pos > 0) {
    m.tpr = static_cast<double>(m.tp) / static_cast<double>(pos);
    m.fnr = static_cast<double>(m.fn) / static_cast<double>(pos);
  }
  if (neg > 0) {
    m.fpr = static_cast<double>(m.fp) / static_cast<double>(neg);
    m.tnr = static_cast<double>(m.tn) / static_cast<double>(neg);
  }
  return m;
}

bool capture_turn(double turn_start, double turn_end,
                  std::span<const ScoreWindow> windows,
                  std::span<const GateDecision> decisions) {
  if (windows.size() != decisions.size()) {
    throw InvalidArgumentError("windows and decisions differ in length");
  }
  std::size_t overlapping = 0, accepted = 0;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (windows[i].start < turn_end && turn_start < windows[i].end) {
      ++overlapping;
      if (decisions[i] == GateDecision::kAccept) ++accepted;
    }
  }
  return overlapping > 0 && 2 * accepted > overlapping;
}

std::vector<LabeledWindow> read_score_stream(std::istream& in) {
  std::vector<LabeledWindow> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    LabeledWindow lw;
    std::string label, extra;
    if (!(fields >> lw.window.start >> lw.window.end >> lw.window.score >> label) ||
        (fields >> extra)) {
      throw InvalidArgumentError(fmt::format(
          "line {}: expected 'start end score label', got '{}'", line_no, line));
    }
    if (label == "owner" || label == "target") {
      lw.label = WindowLabel::kOwner;
    } else if (label == "impostor" || label == "nontarget") {
      lw.label = WindowLabel::kImpostor;
    } else {
      throw InvalidArgumentError(
          fmt::format("line {}: unknown label '{}'", line_no, label));
    }
    if (!(lw.window.start >= 0.0 && lw.window.start < lw.window.end)) {
      throw InvalidArgumentError(fmt::format("line {}: need 0 <= start < end", line_no));
    }
    check_score(lw.window.score);
    out.push_back(lw);
  }
  return out;
}

}  // namespace concord
