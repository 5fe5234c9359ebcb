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

// Owner verification over windowed similarity scores. A window is accepted
// when its score is strictly above the threshold; the threshold is picked so
// that the empirical impostor acceptance rate stays at or below a target.

#ifndef CONCORD_SPEAKER_GATE_H_
#define CONCORD_SPEAKER_GATE_H_

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "concord/core_model.h"

namespace concord {

class CalibrationInfeasibleError : public ConcordError {
 public:
  using ConcordError::ConcordError;
};

struct ScoreWindow {
  double start = 0.0;  // seconds
  double end = 0.0;
  double score = 0.0;  // similarity to the enrolled owner, [0, 1]
};

struct GateConfig {
  double window_len = 2.0;
  double overlap = 0.5;  // shared duration of consecutive windows
  double target_fpr = 0.01;
  std::optional<double> threshold;

  // Throws InvalidArgumentError unless 0 < overlap < window_len and
  // 0 < target_fpr < 1.
  void validate() const;
};

struct Calibration {
  double threshold = 0.0;
  double achieved_fpr = 0.0;
  double achieved_tpr = 0.0;  // 0 when no genuine scores were given
};

// Smallest candidate threshold (unique impostor scores plus a 0 floor) whose
// empirical FPR under the strict accept rule is at most target_fpr.
Calibration calibrate_threshold(std::span<const double> impostor_scores,
                                std::span<const double> genuine_scores,
                                double target_fpr);

using TimeSpan = std::pair<double, double>;

// Fixed-length windows at hop = window_len - overlap; a final window is
// anchored to the clip end when the regular grid leaves a tail uncovered.
std::vector<TimeSpan> segment_windows(double duration, const GateConfig& config);

enum class GateDecision { kAccept, kReject };

std::vector<GateDecision> gate_stream(std::span<const ScoreWindow> windows,
                                      double threshold);

enum class WindowLabel { kOwner, kImpostor };

struct VerificationMetrics {
  std::size_t tp = 0, fn = 0, fp = 0, tn = 0;
  // Absent when the class has no examples.
  std::optional<double> tpr, fnr, fpr, tnr;
};

VerificationMetrics verification_metrics(std::span<const GateDecision> decisions,
                                         std::span<const WindowLabel> labels);

// A turn is captured iff more than half of the windows overlapping it are
// accepted. Turns without any overlapping window are dropped.
bool capture_turn(double turn_start, double turn_end,
                  std::span<const ScoreWindow> windows,
                  std::span<const GateDecision> decisions);

struct LabeledWindow {
  ScoreWindow window;
  WindowLabel label = WindowLabel::kImpostor;
};

// Reads `start end score label` lines; label is "owner" or "impostor"
// (also accepted: "target"/"nontarget"). '#' starts a comment line.
std::vector<LabeledWindow> read_score_stream(std::istream& in);

}  // namespace concord

#endif  // CONCORD_SPEAKER_GATE_H_
