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

#include "expelicit/elicitation_run.hpp"

#include <chrono>
#include <ctime>

#include "expelicit/error.hpp"
#include "expelicit/rng.hpp"
#include "expelicit/serialization.hpp"

namespace expelicit {

namespace {

// Seed streams derived from RunConfig::seed.
constexpr std::uint64_t kScheduleStream = 1;
constexpr std::uint64_t kTrainingStream = 2;
constexpr std::uint64_t kPlanStream = 3;

}  // namespace

json run_config_to_json(const RunConfig& c) {
  const auto& g = c.space.grid();
  json vocabularies = json::object();
  for (const auto& [level, vocab] : c.tasks.vocabularies.levels()) {
    vocabularies[std::to_string(level)] = vocab;
  }
  return json{{"grid",
               {{"neediness_levels", g.neediness_levels},
                {"lengths", g.lengths},
                {"qualities", g.qualities},
                {"probability_step", g.probability_step()}}},
              {"best", c.space.best()},
              {"worst", c.space.worst()},
              {"vocabularies", vocabularies},
              {"goal_complexity", c.tasks.goal_complexity},
              {"k", c.k},
              {"termination_width", c.termination_width},
              {"protocol", to_string(c.protocol.kind)},
              {"primed_plus_prefix", c.primed_plus_prefix},
              {"scheduling", to_string(c.scheduling)},
              {"conflict_policy", to_string(c.conflict_policy)},
              {"seed", c.seed}};
}

RunConfig run_config_from_json(const json& j) {
  try {
    AttributeGrid grid;
    const json& jg = j.at("grid");
    grid.neediness_levels = jg.at("neediness_levels").get<std::vector<int>>();
    grid.lengths = jg.at("lengths").get<std::vector<int>>();
    grid.qualities = jg.at("qualities").get<std::vector<int>>();
    grid.divisions = AttributeGrid::divisions_for_step(jg.at("probability_step").get<double>());

    std::map<int, Vocabulary> vocabularies;
    for (const auto& [level, v] : j.at("vocabularies").items()) {
      vocabularies[std::stoi(level)] = v.get<Vocabulary>();
    }
    RunConfig c{OutcomeSpace(grid, j.at("best").get<Outcome>(), j.at("worst").get<Outcome>()),
                TaskSource{VocabularySet(std::move(vocabularies)),
                           j.at("goal_complexity").get<int>()}};
    c.k = j.at("k").get<int>();
    c.termination_width = j.at("termination_width").get<double>();
    c.primed_plus_prefix = j.at("primed_plus_prefix").get<int>();
    c.protocol = Protocol::make(parse_protocol_kind(j.at("protocol").get<std::string>()),
                                c.primed_plus_prefix);
    c.scheduling = parse_schedule_mode(j.at("scheduling").get<std::string>());
    c.conflict_policy = parse_conflict_policy(j.at("conflict_policy").get<std::string>());
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kLogFormat, std::string("bad run configuration: ") + e.what());
  }
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::kTraining: return "training";
    case Phase::kQuerying: return "querying";
    case Phase::kDone: return "done";
    case Phase::kSuspended: return "suspended";
  }
  return "querying";
}

std::string_view to_string(TaskContext context) {
  switch (context) {
    case TaskContext::kTraining: return "training";
    case TaskContext::kGambleArm: return "gamble";
    case TaskContext::kSureArm: return "sure";
  }
  return "training";
}

TaskContext parse_task_context(std::string_view text) {
  if (text == "training") return TaskContext::kTraining;
  if (text == "gamble") return TaskContext::kGambleArm;
  if (text == "sure") return TaskContext::kSureArm;
  throw Error(ErrorCode::kLogFormat, "unknown task context '" + std::string(text) + "'");
}

ElicitationRun::Clock ElicitationRun::utc_clock() {
  return [] {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string(buf);
  };
}

ElicitationRun::Clock ElicitationRun::fixed_clock(std::string stamp) {
  return [stamp = std::move(stamp)] { return stamp; };
}

ElicitationRun::ElicitationRun(RunConfig config, std::string id, Clock clock)
    : config_(std::move(config)),
      id_(std::move(id)),
      clock_(std::move(clock)),
      state_(config_.space, config_.conflict_policy),
      schedule_(Schedule::seeded(config_.space, config_.scheduling,
                                 derive_seed(config_.seed, {kScheduleStream}))) {
  if (config_.k < 1) throw Error(ErrorCode::kInvalidConfig, "k must be positive");
  log_.append(stamp({{"type", "header"},
                     {"format", kLogFormat},
                     {"version", kLogVersion},
                     {"session_id", id_},
                     {"config", run_config_to_json(config_)},
                     {"schedule", schedule_.order()}}));
  if (config_.protocol.training) {
    const auto outcomes = training_outcomes(config_.space);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      training_.push_back(make_task(outcomes[i], config_.tasks.vocabularies,
                                    config_.tasks.goal_complexity,
                                    derive_seed(config_.seed, {kTrainingStream, i})));
    }
    phase_ = Phase::kTraining;
    log_.append(stamp({{"type", "training"}, {"tasks", training_}}));
  } else {
    begin_querying();
  }
}

json ElicitationRun::stamp(json record) const {
  record["ts"] = clock_ ? clock_() : std::string();
  return record;
}

void ElicitationRun::begin_querying() {
  phase_ = Phase::kQuerying;
  advance_query();
}

void ElicitationRun::advance_query() {
  query_.reset();
  plan_.reset();
  presentation_.reset();
  task_cursor_ = 0;

  auto q = next_query(state_, schedule_, config_.protocol, ordinal_ + 1,
                      config_.termination_width);
  if (!q) {
    phase_ = Phase::kDone;
    log_.append(stamp({{"type", "final"},
                       {"queries", ordinal_},
                       {"conflicts", state_.conflicts().size()},
                       {"intervals", intervals_to_json(state_)},
                       {"midpoints", utility_to_json(state_.midpoint_utility())}}));
    return;
  }
  ordinal_ = q->ordinal;
  schedule_.note_asked(q->outcome);
  issued_.push_back(*q);
  query_ = q;

  json record{{"type", "query"},
              {"ordinal", q->ordinal},
              {"outcome", q->outcome},
              {"p", q->p.value()},
              {"delivery", to_string(q->delivery)},
              {"bounds", state_.interval(q->outcome)}};
  if (q->delivery == Delivery::kExperiential) {
    plan_ = build_experiential_plan(
        *q, config_.space, config_.k, config_.tasks,
        derive_seed(config_.seed, {kPlanStream, static_cast<std::uint64_t>(q->ordinal)}));
    json plan = *plan_;
    plan.erase("query");
    record["plan"] = std::move(plan);
  } else {
    presentation_ = build_conceptual_presentation(*q, config_.space, config_.tasks);
    record["presentation"] = {{"gamble_text", presentation_->gamble_text},
                              {"sure_text", presentation_->sure_text}};
  }
  log_.append(stamp(std::move(record)));
}

std::optional<TaskStep> ElicitationRun::pending_task() const {
  if (phase_ == Phase::kTraining) {
    return TaskStep{TaskContext::kTraining, 0, static_cast<int>(training_cursor_),
                    static_cast<int>(training_.size()), 0, training_[training_cursor_]};
  }
  if (phase_ == Phase::kQuerying && plan_ && task_cursor_ < 2 * plan_->k) {
    const int k = plan_->k;
    const bool first = task_cursor_ < k;
    const int index = first ? task_cursor_ : task_cursor_ - k;
    const bool gamble = (plan_->arm_order == ArmOrder::kGambleFirst) == first;
    const auto& arm = gamble ? plan_->gamble_arm : plan_->sure_arm;
    return TaskStep{gamble ? TaskContext::kGambleArm : TaskContext::kSureArm,
                    plan_->query.ordinal, index, k, first ? 1 : 2,
                    arm[static_cast<std::size_t>(index)]};
  }
  return std::nullopt;
}

Step ElicitationRun::peek() const {
  if (phase_ == Phase::kSuspended) {
    throw Error(ErrorCode::kSuspended, "session " + id_ + " is suspended");
  }
  if (phase_ == Phase::kDone) {
    if (done_delivered_) {
      throw Error(ErrorCode::kExhausted, "session " + id_ + " has finished");
    }
    return DoneStep{};
  }
  if (auto task = pending_task()) return *task;
  if (plan_) return PreferencePromptStep{*plan_};
  return PresentationStep{*presentation_};
}

Step ElicitationRun::next_step() {
  Step step = peek();
  if (std::holds_alternative<DoneStep>(step)) done_delivered_ = true;
  return step;
}

void ElicitationRun::submit(const TaskCompletion& completion) {
  if (phase_ == Phase::kSuspended) {
    throw Error(ErrorCode::kSuspended, "session " + id_ + " is suspended");
  }
  if (phase_ == Phase::kDone) {
    throw Error(ErrorCode::kExhausted, "session " + id_ + " has finished");
  }
  const auto step = pending_task();
  if (!step) {
    throw Error(ErrorCode::kProtocolViolation, "a preference answer is pending, not a task");
  }
  const TaskSpec& task = step->task;
  if (completion.applied != task.goal.target) {
    throw Error(ErrorCode::kProtocolViolation, "applied style does not match the target");
  }
  std::optional<Icon> accepted;
  if (completion.accepted_icon) {
    if (!task.toolbar || *completion.accepted_icon >= task.toolbar->length()) {
      throw Error(ErrorCode::kProtocolViolation, "accepted icon is not on the toolbar");
    }
    accepted = task.toolbar->icons[*completion.accepted_icon];
  }
  if (completion.events < 0) {
    throw Error(ErrorCode::kProtocolViolation, "event count must be nonnegative");
  }
  log_.append(stamp({{"type", "task"},
                     {"context", to_string(step->context)},
                     {"ordinal", step->ordinal},
                     {"index", step->index},
                     {"outcome", task.outcome},
                     {"applied", completion.applied},
                     {"accepted_icon", completion.accepted_icon
                                           ? json(*completion.accepted_icon)
                                           : json(nullptr)},
                     {"events_reported", completion.events},
                     {"residual", simulate_manual_completion(task.goal, accepted)}}));
  if (phase_ == Phase::kTraining) {
    if (++training_cursor_ == training_.size()) begin_querying();
  } else {
    ++task_cursor_;
  }
}

BoundUpdate ElicitationRun::submit(Answer answer) {
  if (phase_ == Phase::kSuspended) {
    throw Error(ErrorCode::kSuspended, "session " + id_ + " is suspended");
  }
  if (phase_ == Phase::kDone) {
    throw Error(ErrorCode::kExhausted, "session " + id_ + " has finished");
  }
  if (!query_ || pending_task()) {
    throw Error(ErrorCode::kProtocolViolation, "a task is pending, not a preference");
  }
  const BoundQuery q = *query_;
  const BoundUpdate update = state_.apply_response(q.outcome, q.p, answer);
  json record{{"type", "response"},
              {"ordinal", q.ordinal},
              {"outcome", q.outcome},
              {"p", q.p.value()},
              {"delivery", to_string(q.delivery)},
              {"answer", to_string(answer)},
              {"before", update.before},
              {"after", update.after},
              {"conflict", update.conflict ? json(*update.conflict) : json(nullptr)}};
  if (plan_) {
    record["arm_order"] = to_string(plan_->arm_order);
    record["gamble_best_count"] = plan_->best_count();
  }
  log_.append(stamp(std::move(record)));
  advance_query();
  return update;
}

void ElicitationRun::suspend() {
  if (phase_ == Phase::kSuspended || phase_ == Phase::kDone) return;
  resume_phase_ = phase_;
  phase_ = Phase::kSuspended;
  log_.append(stamp({{"type", "suspend"}}));
}

void ElicitationRun::resume() {
  if (phase_ != Phase::kSuspended) return;
  phase_ = resume_phase_;
  log_.append(stamp({{"type", "resume"}}));
}

ElicitationRun ElicitationRun::replay(const SessionLog& log, Clock clock) {
  const json& header = log.header();
  ElicitationRun run(run_config_from_json(header.at("config")),
                     header.at("session_id").get<std::string>(), clock);
  try {
    for (std::size_t i = 1; i < log.size(); ++i) {
      const json& r = log.records()[i];
      const std::string type = r.at("type").get<std::string>();
      if (type == "task") {
        TaskCompletion c;
        c.applied = r.at("applied").get<FontStyle>();
        if (!r.at("accepted_icon").is_null()) {
          c.accepted_icon = r.at("accepted_icon").get<std::size_t>();
        }
        c.events = r.at("events_reported").get<int>();
        run.submit(c);
      } else if (type == "response") {
        run.submit(parse_answer(r.at("answer").get<std::string>()));
      } else if (type == "suspend") {
        run.suspend();
      } else if (type == "resume") {
        run.resume();
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kLogFormat, std::string("unreadable record: ") + e.what());
  }
  if (run.log_.normalized().to_jsonl() != log.normalized().to_jsonl()) {
    throw Error(ErrorCode::kReplayMismatch,
                "replaying session " + run.id_ + " does not reproduce its log");
  }
  run.log_ = log;
  run.log_.set_sink(nullptr);
  return run;
}

RunStatus run_protocol(ElicitationRun& run, Respondent& respondent) {
  run.resume();
  while (true) {
    Step step = run.next_step();
    if (std::holds_alternative<DoneStep>(step)) return RunStatus::kDone;
    if (auto* task = std::get_if<TaskStep>(&step)) {
      auto completion = respondent.complete_task(*task);
      if (!completion) {
        run.suspend();
        return RunStatus::kSuspended;
      }
      run.submit(*completion);
      continue;
    }
    std::optional<Answer> answer;
    if (auto* pres = std::get_if<PresentationStep>(&step)) {
      answer = respondent.answer(*pres);
    } else {
      answer = respondent.answer(std::get<PreferencePromptStep>(step));
    }
    if (!answer) {
      run.suspend();
      return RunStatus::kSuspended;
    }
    run.submit(*answer);
  }
}

}  // namespace expelicit
