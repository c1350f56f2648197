// Copyright 2026 The Expelicit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "expelicit/elicitation_run.hpp"
#include "expelicit/respondent_sim.hpp"
#include "expelicit/session_log.hpp"
#include "expelicit/stats.hpp"
#include "expelicit/study_config.hpp"

namespace expelicit {

struct SimulatedSession {
  std::string condition;
  std::string id;  // "<condition>-NNN", 1-based
  UtilityFamily family = UtilityFamily::kLinear;
  SessionLog log;
};

// Runs respondent `respondent` (0-based) of condition `condition` to
// completion. Seeds derive from the study seed, the condition position and
// the respondent index, so every respondent is reproducible on its own.
SimulatedSession simulate_respondent(const StudyConfig& study, std::size_t condition,
                                     int respondent,
                                     ElicitationRun::Clock clock = ElicitationRun::fixed_clock(""));

// Every respondent of every condition. Throws kInvalidConfig without a
// population.
std::vector<SimulatedSession> simulate_study(
    const StudyConfig& study, ElicitationRun::Clock clock = ElicitationRun::fixed_clock(""));

// Writes <out_dir>/<condition>/<id>.jsonl and returns the written paths.
// Timestamps are blank when `normalize_timestamps` is set.
std::vector<std::filesystem::path> run_simulated_study(const StudyConfig& study,
                                                       const std::filesystem::path& out_dir,
                                                       bool normalize_timestamps = false);

// Applies the logged responses, in order, to a fresh state built from the
// header configuration.
UtilityState replay_intervals(const SessionLog& log);

// Throws kLogFormat for a log without a final record and kReplayMismatch
// when replaying its responses does not reproduce the final intervals.
void verify_log(const SessionLog& log);

// Every *.jsonl file in `dir`, in file-name order.
std::vector<SessionLog> load_log_dir(const std::filesystem::path& dir);

// One row per log (final midpoints), one column per outcome. Every log is
// verified first; logs over different grids throw kIncompatibleStudy.
SampleMatrix midpoint_matrix(const std::vector<SessionLog>& logs);

struct StudyAnalysis {
  std::string label_a;
  std::string label_b;
  SampleMatrix a;
  SampleMatrix b;
  TestResult t;
  TestResult hotelling;
  SignificanceTable table;
};

// t is oriented so positive means condition A is higher.
StudyAnalysis analyze_matrices(SampleMatrix a, SampleMatrix b, std::string label_a,
                               std::string label_b, double alpha = 0.05);
StudyAnalysis export_and_analyze(const std::vector<SessionLog>& a,
                                 const std::vector<SessionLog>& b, std::string label_a,
                                 std::string label_b, double alpha = 0.05);

std::string render_matrix_csv(const SampleMatrix& m);
std::string render_analysis_text(const StudyAnalysis& analysis);
// One row per outcome plus a summary row for the multivariate test.
std::string render_analysis_csv(const StudyAnalysis& analysis);

// Batch decision evaluation. Input:
//   {"utility": {"log": path} | {"values": {"n0,l1,q4": u, ...}},
//    "scenarios": [{"name", "neediness", "goals": [{"target", "baseline"?}],
//                   "prior"?, "events"?: [{"feature", "value"}],
//                   "candidates": [[style, ...], ...]}]}
// A log utility uses that session's final midpoints. Returns one result
// object per scenario with the posterior, per-candidate expected utilities
// and the chosen action (null for no suggestion).
nlohmann::json decide_batch(const nlohmann::json& input, const StudyConfig& study,
                            const std::filesystem::path& base_dir = {});

}  // namespace expelicit
