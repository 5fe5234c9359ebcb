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

// The concord command line: calibrate, run, eval, policy-check, gen-fixtures.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "concord/agent.h"
#include "concord/dataset.h"
#include "concord/disclosure_gate.h"
#include "concord/episode.h"
#include "concord/evaluate.h"
#include "concord/fixtures.h"
#include "concord/lexicon.h"
#include "concord/relationship_engine.h"
#include "concord/speaker_gate.h"
#include "concord/text.h"

namespace {

using concord::ConcordError;
using concord::InvalidArgumentError;
using Json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kRuntime = 2;

// Thrown for bad user input that CLI11 cannot catch by itself.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  out << text;
}

std::string opt_rate(const std::optional<double>& v) {
  return v ? fmt::format("{:.4f}", *v) : std::string("n/a");
}

// Plain `key = value` lines; '#' starts a comment.
std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string t = concord::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError(fmt::format("config line {}: expected key = value", n));
    }
    std::string key = concord::trim(t.substr(0, eq));
    std::string value = concord::trim(t.substr(eq + 1));
    if (key.empty()) throw UsageError(fmt::format("config line {}: empty key", n));
    std::replace(key.begin(), key.end(), '_', '-');
    out[key] = value;
  }
  return out;
}

// Fills options of the chosen subcommand that were not given on the command
// line. Keys no subcommand knows are rejected.
void apply_config(CLI::App& app, CLI::App* sub, const std::map<std::string, std::string>& cfg) {
  for (const auto& [key, value] : cfg) {
    bool known = false;
    for (CLI::App* s : app.get_subcommands({})) {
      if (s->get_option_no_throw("--" + key)) known = true;
    }
    if (!known) throw UsageError(fmt::format("unknown config key '{}'", key));
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt || opt->count() > 0) continue;
    if (opt->get_expected_max() == 0) {
      if (value != "true" && value != "false") {
        throw UsageError(fmt::format("config key '{}' expects true or false", key));
      }
      opt->add_result(value);
    } else {
      std::istringstream words(value);
      std::string w;
      while (words >> w) opt->add_result(w);
    }
    opt->run_callback();
  }
}

// calibrate ------------------------------------------------------------------

struct CalibrateArgs {
  std::string scores;
  double target_fpr = 0.01;
  std::string json_out;
};

int cmd_calibrate(const CalibrateArgs& a) {
  std::istringstream in(read_file(a.scores));
  const std::vector<concord::LabeledWindow> stream = concord::read_score_stream(in);
  std::vector<double> impostor, genuine;
  std::vector<concord::ScoreWindow> windows;
  std::vector<concord::WindowLabel> labels;
  for (const auto& lw : stream) {
    (lw.label == concord::WindowLabel::kOwner ? genuine : impostor).push_back(lw.window.score);
    windows.push_back(lw.window);
    labels.push_back(lw.label);
  }
  const concord::Calibration c = concord::calibrate_threshold(impostor, genuine, a.target_fpr);
  const auto decisions = concord::gate_stream(windows, c.threshold);
  const auto m = concord::verification_metrics(decisions, labels);

  fmt::print("{:<16} {}\n", "windows", stream.size());
  fmt::print("{:<16} {}\n", "impostor", impostor.size());
  fmt::print("{:<16} {}\n", "genuine", genuine.size());
  fmt::print("{:<16} {:.6f}\n", "threshold", c.threshold);
  fmt::print("{:<16} {:.6f}\n", "achieved_fpr", c.achieved_fpr);
  fmt::print("{:<16} {:.6f}\n", "achieved_tpr", c.achieved_tpr);
  fmt::print("{:<16} tp={} fn={} fp={} tn={}\n", "confusion", m.tp, m.fn, m.fp, m.tn);

  Json j{{"threshold", c.threshold},
         {"target_fpr", a.target_fpr},
         {"achieved_fpr", c.achieved_fpr},
         {"achieved_tpr", c.achieved_tpr},
         {"impostor_windows", impostor.size()},
         {"genuine_windows", genuine.size()}};
  const std::string dumped = j.dump(2) + "\n";
  if (a.json_out.empty()) {
    fmt::print("{}", dumped);
  } else {
    write_file(a.json_out, dumped);
  }
  return kOk;
}

// run ------------------------------------------------------------------------

struct RunArgs {
  std::string dataset;
  std::uint64_t seed = 0;
  double drop = 0.0;
  double latency = 0.5;
  double timeout = 30.0;
  std::size_t history = concord::kHistoryTurns;
  double approval_delay = 1.0;
  bool dispatch_low = false;
  std::vector<std::string> approvals{"grant"};
  std::string trace;
};

concord::ApprovalPolicy approval_policy(const std::vector<std::string>& spec) {
  const std::string& mode = spec.front();
  if (mode == "grant" && spec.size() == 1) {
    return concord::approve_all(concord::ApprovalSignal::kGranted);
  }
  if (mode == "deny" && spec.size() == 1) {
    return concord::approve_all(concord::ApprovalSignal::kDenied);
  }
  if (mode == "none" && spec.size() == 1) {
    return [](const concord::QueryRequest&) { return std::optional<concord::ApprovalSignal>{}; };
  }
  if (mode == "script" && spec.size() == 2) {
    return concord::parse_approval_script(read_file(spec[1]));
  }
  throw UsageError("--approvals expects grant, deny, none or 'script FILE'");
}

int cmd_run(const RunArgs& a) {
  const concord::DatasetRecord record = concord::load_dataset(a.dataset);
  concord::EngineConfig engine;
  engine.history_turns = a.history;
  engine.approval_delay = a.approval_delay;
  engine.dispatch_low_value = a.dispatch_low;
  engine.validate();
  concord::ChannelConfig channel{a.latency, a.drop, a.timeout, a.seed};
  channel.validate();
  const concord::ApprovalPolicy policy = approval_policy(a.approvals);

  const concord::EpisodeTrace trace = concord::run_episode(record, engine, channel, policy);
  const std::string jsonl = concord::trace_to_jsonl(trace);
  if (!a.trace.empty()) write_file(a.trace, jsonl);

  std::map<std::string, std::size_t> statuses, merges;
  for (const auto& d : trace.decisions) ++statuses[std::string(concord::status_name(d.status))];
  for (const auto& m : trace.merges) ++merges[std::string(concord::merge_kind_name(m.kind))];
  std::size_t sends = 0, drops = 0, delivers = 0;
  for (const auto& e : trace.channel_events) {
    if (e.kind == concord::ChannelEventKind::kSend) ++sends;
    if (e.kind == concord::ChannelEventKind::kDrop) ++drops;
    if (e.kind == concord::ChannelEventKind::kDeliver) ++delivers;
  }
  fmt::print("{:<20} {}\n", "dataset", trace.dataset_id);
  fmt::print("{:<20} {}\n", "seed", a.seed);
  fmt::print("{:<20} {}\n", "analyses", trace.analyses.size());
  fmt::print("{:<20} {}\n", "dispatched", trace.dispatched_count());
  fmt::print("{:<20} send={} drop={} deliver={}\n", "channel", sends, drops, delivers);
  for (const auto& [k, v] : statuses) fmt::print("{:<20} {}\n", "decision " + k, v);
  for (const auto& [k, v] : merges) fmt::print("{:<20} {}\n", "merge " + k, v);

  Json j{{"dataset_id", trace.dataset_id},
         {"seed", a.seed},
         {"analyses", trace.analyses.size()},
         {"dispatched", trace.dispatched_count()},
         {"channel", {{"send", sends}, {"drop", drops}, {"deliver", delivers}}},
         {"decisions", statuses},
         {"merges", merges},
         {"trace", a.trace.empty() ? Json() : Json(a.trace)}};
  fmt::print("{}\n", j.dump(2));
  return kOk;
}

// eval -----------------------------------------------------------------------

struct EvalArgs {
  std::string trace;
  std::string dataset;
  std::string report;
  std::vector<std::string> level_map;  // Label=L2
};

concord::LevelOverrides parse_level_map(const std::vector<std::string>& entries) {
  concord::LevelOverrides out;
  for (const std::string& e : entries) {
    const auto eq = e.find('=');
    const auto level = eq == std::string::npos ? std::nullopt
                                               : concord::parse_level(concord::trim(e.substr(eq + 1)));
    if (!level) throw UsageError(fmt::format("--level-map expects Label=L1|L2|L3, got '{}'", e));
    out[concord::to_lower(concord::trim(e.substr(0, eq)))] = *level;
  }
  return out;
}

int cmd_eval(const EvalArgs& a) {
  const concord::DatasetRecord record = concord::load_dataset(a.dataset);
  const std::string jsonl = read_file(a.trace);
  const concord::EpisodeTrace trace = concord::parse_trace_jsonl(jsonl);
  const concord::EvalReport report =
      concord::evaluate(trace, record, parse_level_map(a.level_map));
  const auto leaks = concord::privacy_audit(jsonl);

  fmt::print("{}", concord::report_table(report));
  fmt::print("{:<28} {}\n", "privacy_violations", leaks.size());
  for (const auto& v : leaks) {
    fmt::print("  line {} message {}\n", v.line, v.message_id);
  }

  Json j = concord::report_json(report);
  j["privacy_violations"] = leaks.size();
  const std::string dumped = j.dump(2) + "\n";
  if (a.report.empty()) {
    fmt::print("{}", dumped);
  } else {
    write_file(a.report, dumped);
  }
  return leaks.empty() ? kOk : kValidation;
}

// policy-check ---------------------------------------------------------------

struct PolicyArgs {
  std::string level;
  std::string sensitivity;
  bool intent = false;
  std::string approval;
  std::string transcript;
  std::string owner = "A";
  int turn = 0;
  std::string slot;
  std::string answer;
};

std::vector<concord::Turn> owner_window(const concord::DatasetRecord& record, concord::Role owner,
                                        int turn, std::size_t history) {
  std::vector<concord::Turn> own;
  for (const auto& t : record.conversation_transcript) {
    if (t.speaker == owner && (turn == 0 || t.turn_id <= turn)) own.push_back(t);
  }
  if (own.empty()) throw InvalidArgumentError("no owner turns at or before the given turn");
  const std::size_t keep = std::min(own.size(), history + 1);
  return {own.end() - static_cast<std::ptrdiff_t>(keep), own.end()};
}

int cmd_policy(const PolicyArgs& a) {
  concord::DisclosureRequest req;
  Json j;
  j["inputs"] = Json::object();

  if (!a.transcript.empty()) {
    const concord::DatasetRecord record = concord::load_dataset(a.transcript);
    const auto owner = concord::parse_role(a.owner);
    if (!owner) throw UsageError("--owner expects A or B");
    const auto window = owner_window(record, *owner, a.turn, concord::kHistoryTurns);
    req.relationship = concord::assess_window(window, concord::RelationshipLexicons::defaults(),
                                              &concord::ResolverLexicons::defaults());
    req.intent_elevated =
        a.intent || concord::detect_privacy_intent(window, concord::default_privacy_cues());
    fmt::print("relationship window: turns {}..{} of {}\n", window.front().turn_id,
               window.back().turn_id, concord::role_label(*owner));
    Json ev = Json::array();
    for (const auto& e : req.relationship.evidence) {
      fmt::print("  {:<20} turn {:<4} '{}'\n", e.marker, e.turn_id, e.phrase);
      ev.push_back({{"marker", e.marker}, {"turn_id", e.turn_id}, {"phrase", e.phrase}});
    }
    j["evidence"] = ev;
  } else {
    req.intent_elevated = a.intent;
  }
  if (!a.level.empty()) {
    const auto level = concord::parse_level(a.level);
    if (!level) throw UsageError(fmt::format("invalid level '{}'", a.level));
    req.relationship.level = *level;
  } else if (a.transcript.empty()) {
    throw UsageError("either --level or --transcript is required");
  }

  req.query.target_slot = a.slot.empty() ? "GENERAL_ATTRIBUTE" : a.slot;
  req.candidate_answer = a.answer;
  const auto& lexicon = concord::SensitivityLexicon::defaults();
  if (!a.sensitivity.empty()) {
    const auto s = concord::parse_sensitivity(a.sensitivity);
    if (!s) throw UsageError(fmt::format("invalid sensitivity '{}'", a.sensitivity));
    req.sensitivity = *s;
  } else if (!a.answer.empty()) {
    req.sensitivity = concord::classify_sensitivity(req.query, a.answer, lexicon);
  } else {
    throw UsageError("either --sensitivity or --answer is required");
  }
  if (req.candidate_answer.empty()) req.candidate_answer = "<answer>";

  std::optional<concord::ApprovalSignal> approval;
  if (a.approval == "grant") approval = concord::ApprovalSignal::kGranted;
  if (a.approval == "deny") approval = concord::ApprovalSignal::kDenied;

  const concord::Sensitivity effective = req.effective_sensitivity();
  const concord::LockDecision lock = concord::hard_lock(effective, req.relationship.level);
  const concord::DisclosureKind gate = concord::gate_outcome(req);
  std::vector<std::string> notes;
  const concord::DisclosureOutcome out = concord::decide(req, approval, lexicon, &notes);

  fmt::print("{:<22} {}\n", "level", concord::level_name(req.relationship.level));
  fmt::print("{:<22} {}\n", "distance_lock", req.relationship.locked ? "yes" : "no");
  fmt::print("{:<22} {}\n", "sensitivity", concord::sensitivity_name(req.sensitivity));
  fmt::print("{:<22} {}\n", "privacy_intent", req.intent_elevated ? "yes" : "no");
  fmt::print("{:<22} {}\n", "effective_sensitivity", concord::sensitivity_name(effective));
  fmt::print("{:<22} {}\n", "hard_lock",
             lock == concord::LockDecision::kAbort ? "abort" : "proceed");
  fmt::print("{:<22} {}\n", "gate", concord::disclosure_name(gate));
  fmt::print("{:<22} {}\n", "outcome", concord::disclosure_name(out.kind()));
  if (out.reveals()) fmt::print("{:<22} {}\n", "content", out.content());
  for (const auto& n : notes) fmt::print("note: {}\n", n);

  j["inputs"] = {{"slot", req.query.target_slot},
                 {"approval", a.approval.empty() ? Json() : Json(a.approval)}};
  j["level"] = concord::level_name(req.relationship.level);
  j["locked"] = req.relationship.locked;
  j["sensitivity"] = concord::sensitivity_name(req.sensitivity);
  j["privacy_intent"] = req.intent_elevated;
  j["effective_sensitivity"] = concord::sensitivity_name(effective);
  j["hard_lock"] = lock == concord::LockDecision::kAbort ? "abort" : "proceed";
  j["gate"] = concord::disclosure_name(gate);
  j["outcome"] = concord::disclosure_name(out.kind());
  j["content"] = out.reveals() ? Json(out.content()) : Json();
  j["masked"] = !out.masked_spans().empty();
  fmt::print("{}\n", j.dump(2));
  return kOk;
}

// gen-fixtures ---------------------------------------------------------------

struct GenArgs {
  std::string template_id;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::string out_dir;
};

int cmd_gen(const GenArgs& a) {
  if (a.count == 0) throw UsageError("--count must be positive");
  if (a.count > 1 && a.out_dir.empty()) throw UsageError("--count > 1 requires --out-dir");
  if (!a.out_dir.empty()) std::filesystem::create_directories(a.out_dir);
  for (std::size_t i = 0; i < a.count; ++i) {
    const concord::DatasetRecord r = concord::generate_fixture(a.template_id, a.seed + i);
    const std::string text = concord::dump_dataset(r);
    if (a.out_dir.empty()) {
      fmt::print("{}", text);
    } else {
      const auto path = std::filesystem::path(a.out_dir) / (r.dataset_id + ".json");
      write_file(path.string(), text);
      fmt::print(stderr, "wrote {}\n", path.string());
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concord dialogue context engine and two-agent simulator"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value file supplying defaults")
      ->check(CLI::ExistingFile);

  CalibrateArgs ca;
  auto* calibrate = app.add_subcommand("calibrate", "Calibrate the speaker gate threshold");
  calibrate->add_option("--scores", ca.scores, "Score stream: start end score label")
      ->required();
  calibrate->add_option("--target-fpr", ca.target_fpr, "Target false-positive rate")
      ->check(CLI::Range(0.0, 1.0));
  calibrate->add_option("--json-out", ca.json_out, "Write the JSON result here");

  RunArgs ra;
  auto* run = app.add_subcommand("run", "Run a two-agent episode");
  run->add_option("--dataset", ra.dataset, "Dataset record (JSON)")->required();
  run->add_option("--seed", ra.seed, "Channel RNG seed");
  run->add_option("--drop", ra.drop, "Drop probability")->check(CLI::Range(0.0, 1.0));
  run->add_option("--latency", ra.latency, "Delivery latency in seconds");
  run->add_option("--timeout", ra.timeout, "Query timeout in seconds");
  run->add_option("--history", ra.history, "Prior own turns in each window");
  run->add_option("--approval-delay", ra.approval_delay, "Owner approval delay in seconds");
  run->add_flag("--dispatch-low", ra.dispatch_low, "Also dispatch LOW_VALUE queries");
  run->add_option("--approvals", ra.approvals, "grant | deny | none | script FILE")
      ->expected(1, 2);
  run->add_option("--trace", ra.trace, "Write the JSONL trace here");

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Score a trace against a dataset's gold labels");
  eval->add_option("--trace", ea.trace, "JSONL trace")->required();
  eval->add_option("--dataset", ea.dataset, "Dataset record (JSON)")->required();
  eval->add_option("--report", ea.report, "Write the JSON report here");
  eval->add_option("--level-map", ea.level_map, "Gold level for a backstory label, Label=L2");

  PolicyArgs pa;
  auto* policy = app.add_subcommand("policy-check", "Trace one disclosure decision");
  policy->add_option("--level", pa.level, "L1 | L2 | L3");
  policy->add_option("--sensitivity", pa.sensitivity, "Low | Mid | High | Critical");
  policy->add_flag("--intent", pa.intent, "Treat privacy intent as detected");
  policy->add_option("--approval", pa.approval, "Owner signal for an approval loop")
      ->check(CLI::IsMember({"grant", "deny", "none"}));
  policy->add_option("--transcript", pa.transcript, "Dataset record to assess the level from");
  policy->add_option("--owner", pa.owner, "Transcript owner, A or B");
  policy->add_option("--turn", pa.turn, "Last turn id of the window (default: end)");
  policy->add_option("--slot", pa.slot, "Target slot of the query");
  policy->add_option("--answer", pa.answer, "Candidate answer to classify and gate");

  GenArgs ga;
  auto* gen = app.add_subcommand("gen-fixtures", "Generate a synthetic dataset record");
  gen->add_option("--template", ga.template_id, "Template id")
      ->required()
      ->check(CLI::IsMember(concord::fixture_templates()));
  gen->add_option("--seed", ga.seed, "Generator seed");
  gen->add_option("--count", ga.count, "Number of records, seeds seed..seed+count-1");
  gen->add_option("--out-dir", ga.out_dir, "Write each record to a file in this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!config_path.empty()) apply_config(app, sub, parse_config(read_file(config_path)));
    if (sub == calibrate) return cmd_calibrate(ca);
    if (sub == run) return cmd_run(ra);
    if (sub == eval) return cmd_eval(ea);
    if (sub == policy) return cmd_policy(pa);
    return cmd_gen(ga);
  } catch (const UsageError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kValidation;
  } catch (const CLI::ParseError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kValidation;
  } catch (const concord::DatasetValidationError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    for (const auto& v : e.violations()) fmt::print(stderr, "  {}\n", v.to_string());
    return kValidation;
  } catch (const concord::DatasetParseError& e) {
    fmt::print(stderr, "error: {} (byte {})\n", e.what(), e.byte_offset());
    return kValidation;
  } catch (const concord::LexiconError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kRuntime;
  } catch (const InvalidArgumentError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kValidation;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kRuntime;
  }
}
