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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "expelicit/outcome_space.hpp"
#include "expelicit/query_engine.hpp"
#include "expelicit/session_log.hpp"
#include "expelicit/task_domain.hpp"
#include "expelicit/utility_bounds.hpp"

namespace expelicit {

// Everything that determines an elicitation run besides the responses.
struct RunConfig {
  OutcomeSpace space;
  TaskSource tasks;
  int k = 10;
  double termination_width = kDefaultConvergenceWidth;
  Protocol protocol = Protocol::make(ProtocolKind::kConceptual);
  int primed_plus_prefix = kDefaultPrimedPlusPrefix;
  ScheduleMode scheduling = ScheduleMode::kSequential;
  ConflictPolicy conflict_policy = ConflictPolicy::kTrustNew;
  std::uint64_t seed = 0;
};

nlohmann::json run_config_to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);

enum class Phase { kTraining, kQuerying, kDone, kSuspended };

std::string_view to_string(Phase phase);

enum class TaskContext { kTraining, kGambleArm, kSureArm };

std::string_view to_string(TaskContext context);
TaskContext parse_task_context(std::string_view text);

struct TaskStep {
  TaskContext context = TaskContext::kTraining;
  int ordinal = 0;       // query ordinal; 0 during training
  int index = 0;         // position within the training block or arm
  int total = 0;         // training block size or k
  int arm_position = 0;  // 1 or 2 within an experiential query
  TaskSpec task;
};

struct PresentationStep {
  ConceptualPresentation presentation;
};

struct PreferencePromptStep {
  ExperientialPlan plan;
};

struct DoneStep {};

using Step = std::variant<TaskStep, PresentationStep, PreferencePromptStep, DoneStep>;

// What the respondent reports after finishing a highlighting task.
struct TaskCompletion {
  FontStyle applied;
  std::optional<std::size_t> accepted_icon;
  int events = 0;
};

// Drives one respondent through a protocol: optional training block, then
// bisection queries (conceptual or experiential per ordinal) until every
// interior outcome has converged. Every served item and every response is
// appended to the session log.
class ElicitationRun {
 public:
  using Clock = std::function<std::string()>;

  ElicitationRun(RunConfig config, std::string id, Clock clock = utc_clock());

  // Rebuilds a run by feeding the inputs recorded in `log` into a fresh run
  // created from the header configuration. The rebuilt run keeps the original
  // records; kReplayMismatch is thrown if regenerating them differs.
  static ElicitationRun replay(const SessionLog& log, Clock clock = utc_clock());

  static Clock utc_clock();
  static Clock fixed_clock(std::string stamp);

  const RunConfig& config() const noexcept { return config_; }
  const std::string& id() const noexcept { return id_; }
  Phase phase() const noexcept { return phase_; }
  const UtilityState& state() const noexcept { return state_; }
  const SessionLog& log() const noexcept { return log_; }
  void set_log_sink(SessionLog::Sink sink) { log_.set_sink(std::move(sink)); }
  const Schedule& schedule() const noexcept { return schedule_; }
  // Queries issued so far (including a pending one).
  int ordinal() const noexcept { return ordinal_; }
  const std::vector<BoundQuery>& issued() const noexcept { return issued_; }

  // Pending step. The done step is delivered once; later calls throw
  // kExhausted. Throws kSuspended while suspended.
  Step next_step();
  // Non-consuming view of the pending step.
  Step peek() const;

  // Throws kProtocolViolation when no task is pending or the applied style
  // does not reproduce the target.
  void submit(const TaskCompletion& completion);
  // Throws kProtocolViolation when no preference is pending.
  BoundUpdate submit(Answer answer);

  void suspend();
  void resume();

 private:
  void begin_querying();
  void advance_query();
  std::optional<TaskStep> pending_task() const;
  nlohmann::json stamp(nlohmann::json record) const;

  RunConfig config_;
  std::string id_;
  Clock clock_;
  Phase phase_ = Phase::kQuerying;
  Phase resume_phase_ = Phase::kQuerying;
  UtilityState state_;
  Schedule schedule_;
  SessionLog log_;

  std::vector<TaskSpec> training_;
  std::size_t training_cursor_ = 0;

  int ordinal_ = 0;
  std::vector<BoundQuery> issued_;
  std::optional<BoundQuery> query_;
  std::optional<ExperientialPlan> plan_;
  std::optional<ConceptualPresentation> presentation_;
  int task_cursor_ = 0;
  bool done_delivered_ = false;
};

// Source of responses for run_protocol. Returning nullopt means the
// respondent abandoned the session; the run is suspended at that step.
class Respondent {
 public:
  virtual ~Respondent() = default;
  virtual std::optional<TaskCompletion> complete_task(const TaskStep& step) = 0;
  virtual std::optional<Answer> answer(const PresentationStep& step) = 0;
  virtual std::optional<Answer> answer(const PreferencePromptStep& step) = 0;
};

enum class RunStatus { kDone, kSuspended };

// Loops next_step -> respondent -> submit until done or abandoned. A
// suspended run is resumed first.
RunStatus run_protocol(ElicitationRun& run, Respondent& respondent);

}  // namespace expelicit
