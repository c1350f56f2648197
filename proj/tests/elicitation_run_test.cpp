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


#include <gtest/gtest.h>

#include "expelicit/error.hpp"
#include "expelicit/respondent_sim.hpp"

namespace expelicit {
namespace {

RunConfig config_for(ProtocolKind kind, std::uint64_t seed = 42) {
  RunConfig c;
  c.protocol = Protocol::make(kind);
  c.seed = seed;
  return c;
}

SimulatedRespondent exact_respondent(const OutcomeSpace& space, std::uint64_t seed) {
  return SimulatedRespondent(sample_ground_truth(UtilityFamily::kLinear, space, seed),
                             BiasModel::none(), ResponseModel::deterministic(), seed);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidConfig;
}

class ProtocolRuns : public ::testing::TestWithParam<ProtocolKind> {};

TEST_P(ProtocolRuns, ExactRespondentConvergesAroundTruth) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ElicitationRun run(config_for(GetParam(), seed), "r", ElicitationRun::fixed_clock(""));
    auto who = exact_respondent(run.config().space, seed);
    ASSERT_EQ(run_protocol(run, who), RunStatus::kDone);
    EXPECT_EQ(run.phase(), Phase::kDone);
    EXPECT_TRUE(run.state().all_converged());
    EXPECT_TRUE(run.state().conflicts().empty());
    // Four halvings take a [0, 1] interval of ten ticks to one tick.
    EXPECT_LE(run.ordinal(), 16 * 4);
    for (const auto& o : run.config().space.interior()) {
      const auto& iv = run.state().interval(o);
      const double truth = who.truth().values.value(o);
      EXPECT_LE(iv.lo.value(), truth + 1e-12) << o.to_string();
      EXPECT_GE(iv.hi.value(), truth - 1e-12) << o.to_string();
      EXPECT_LE(iv.hi.value() - iv.lo.value(), 0.1 + 1e-12);
    }
    const auto finals = run.log().of_type("final");
    ASSERT_EQ(finals.size(), 1u);
    EXPECT_EQ(finals[0].at("queries"), run.ordinal());
    EXPECT_EQ(finals[0].at("midpoints").size(), 18u);
    EXPECT_EQ(run.log().of_type("response").size(), static_cast<std::size_t>(run.ordinal()));
  }
}

INSTANTIATE_TEST_SUITE_P(All, ProtocolRuns,
                         ::testing::Values(ProtocolKind::kConceptual, ProtocolKind::kExperiential,
                                           ProtocolKind::kPrimed, ProtocolKind::kPrimedPlus));

TEST(ElicitationRun, ConceptualServesPresentations) {
  ElicitationRun run(config_for(ProtocolKind::kConceptual), "c");
  EXPECT_EQ(run.phase(), Phase::kQuerying);
  const Step s = run.next_step();
  ASSERT_TRUE(std::holds_alternative<PresentationStep>(s));
  const auto& p = std::get<PresentationStep>(s).presentation;
  EXPECT_EQ(p.query.ordinal, 1);
  EXPECT_EQ(p.query.delivery, Delivery::kConceptual);
  EXPECT_EQ(p.query.p, Probability(5, 10));
  EXPECT_FALSE(p.gamble_text.empty());
}

TEST(ElicitationRun, ExperientialServesTwoArmsThenPrompt) {
  ElicitationRun run(config_for(ProtocolKind::kExperiential), "e");
  for (int ordinal = 1; ordinal <= 2; ++ordinal) {
    for (int i = 0; i < 20; ++i) {
      const Step s = run.next_step();
      ASSERT_TRUE(std::holds_alternative<TaskStep>(s)) << i;
      const auto& t = std::get<TaskStep>(s);
      EXPECT_EQ(t.ordinal, ordinal);
      EXPECT_EQ(t.index, i % 10);
      EXPECT_EQ(t.total, 10);
      EXPECT_EQ(t.arm_position, i < 10 ? 1 : 2);
      const bool gamble_first = ordinal % 2 == 1;
      EXPECT_EQ(t.context, (i < 10) == gamble_first ? TaskContext::kGambleArm
                                                    : TaskContext::kSureArm);
      run.submit(simulate_task(t.task));
    }
    const Step s = run.next_step();
    ASSERT_TRUE(std::holds_alternative<PreferencePromptStep>(s));
    const auto& plan = std::get<PreferencePromptStep>(s).plan;
    EXPECT_EQ(plan.query.ordinal, ordinal);
    EXPECT_EQ(plan.query.delivery, Delivery::kExperiential);
    EXPECT_NEAR(plan.realized_fraction(), plan.query.p.value(), 1e-12);
    run.submit(Answer::kPrefersSure);
  }
  EXPECT_EQ(run.log().of_type("task").size(), 40u);
}

TEST(ElicitationRun, PrimedStartsWithTraining) {
  ElicitationRun run(config_for(ProtocolKind::kPrimed), "p");
  EXPECT_EQ(run.phase(), Phase::kTraining);
  ASSERT_EQ(run.log().of_type("training").size(), 1u);
  const auto outcomes = training_outcomes(run.config().space);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const Step s = run.next_step();
    ASSERT_TRUE(std::holds_alternative<TaskStep>(s));
    const auto& t = std::get<TaskStep>(s);
    EXPECT_EQ(t.context, TaskContext::kTraining);
    EXPECT_EQ(t.ordinal, 0);
    EXPECT_EQ(t.task.outcome, outcomes[i]);
    EXPECT_EQ(t.total, static_cast<int>(outcomes.size()));
    run.submit(simulate_task(t.task));
  }
  EXPECT_EQ(run.phase(), Phase::kQuerying);
  EXPECT_TRUE(std::holds_alternative<PresentationStep>(run.next_step()));
}

TEST(ElicitationRun, PrimedPlusPrefixIsExperiential) {
  ElicitationRun run(config_for(ProtocolKind::kPrimedPlus), "pp");
  auto who = exact_respondent(run.config().space, 3);
  ASSERT_EQ(run_protocol(run, who), RunStatus::kDone);
  for (const auto& r : run.log().of_type("response")) {
    const int ordinal = r.at("ordinal");
    EXPECT_EQ(r.at("delivery"), ordinal <= 5 ? "experiential" : "conceptual");
  }
  EXPECT_EQ(who.experience_count(), 5);
}

TEST(ElicitationRun, DoneIsDeliveredOnce) {
  ElicitationRun run(config_for(ProtocolKind::kConceptual), "d");
  auto who = exact_respondent(run.config().space, 2);
  ASSERT_EQ(run_protocol(run, who), RunStatus::kDone);
  EXPECT_EQ(code_of([&] { run.next_step(); }), ErrorCode::kExhausted);
  EXPECT_EQ(code_of([&] { run.submit(Answer::kIndifferent); }), ErrorCode::kExhausted);
}

TEST(ElicitationRun, ProtocolViolations) {
  ElicitationRun run(config_for(ProtocolKind::kExperiential), "v");
  EXPECT_EQ(code_of([&] { run.submit(Answer::kPrefersGamble); }), ErrorCode::kProtocolViolation);
  const auto t = std::get<TaskStep>(run.next_step());
  TaskCompletion wrong = simulate_task(t.task);
  wrong.applied.bold = !wrong.applied.bold;
  EXPECT_EQ(code_of([&] { run.submit(wrong); }), ErrorCode::kProtocolViolation);
  TaskCompletion off_bar = simulate_task(t.task);
  off_bar.accepted_icon = 99;
  EXPECT_EQ(code_of([&] { run.submit(off_bar); }), ErrorCode::kProtocolViolation);
  TaskCompletion negative = simulate_task(t.task);
  negative.events = -1;
  EXPECT_EQ(code_of([&] { run.submit(negative); }), ErrorCode::kProtocolViolation);

  ElicitationRun c(config_for(ProtocolKind::kConceptual), "w");
  EXPECT_EQ(code_of([&] { c.submit(TaskCompletion{}); }), ErrorCode::kProtocolViolation);
}

TEST(ElicitationRun, SuspendAndResume) {
  ElicitationRun run(config_for(ProtocolKind::kExperiential), "s");
  auto who = exact_respondent(run.config().space, 4);
  who.abandon_after(25);
  ASSERT_EQ(run_protocol(run, who), RunStatus::kSuspended);
  EXPECT_EQ(run.phase(), Phase::kSuspended);
  EXPECT_EQ(code_of([&] { run.next_step(); }), ErrorCode::kSuspended);
  EXPECT_EQ(code_of([&] { run.submit(Answer::kIndifferent); }), ErrorCode::kSuspended);
  EXPECT_EQ(run.log().of_type("suspend").size(), 1u);

  auto rest = exact_respondent(run.config().space, 4);
  ASSERT_EQ(run_protocol(run, rest), RunStatus::kDone);
  EXPECT_EQ(run.log().of_type("resume").size(), 1u);
  EXPECT_TRUE(run.state().all_converged());
}

TEST(ElicitationRun, ReplayReproducesTheLog) {
  for (auto kind : {ProtocolKind::kConceptual, ProtocolKind::kPrimedPlus}) {
    ElicitationRun run(config_for(kind, 9), "x");
    auto who = exact_respondent(run.config().space, 9);
    who.abandon_after(30);
    run_protocol(run, who);
    auto rest = exact_respondent(run.config().space, 9);
    ASSERT_EQ(run_protocol(run, rest), RunStatus::kDone);

    const SessionLog text = SessionLog::parse(run.log().to_jsonl());
    const ElicitationRun back = ElicitationRun::replay(text);
    EXPECT_EQ(back.phase(), Phase::kDone);
    EXPECT_EQ(back.ordinal(), run.ordinal());
    EXPECT_EQ(back.state().intervals(), run.state().intervals());
    EXPECT_EQ(back.log().to_jsonl(), run.log().to_jsonl());
  }
}

TEST(ElicitationRun, ReplayDetectsTampering) {
  ElicitationRun run(config_for(ProtocolKind::kConceptual, 5), "t");
  auto who = exact_respondent(run.config().space, 5);
  run_protocol(run, who);
  SessionLog tampered;
  bool flipped = false;
  for (auto r : run.log().records()) {
    if (!flipped && r.at("type") == "response") {
      // Keep the answer but change the logged bound it produced.
      r["after"] = {0.8, 0.9};
      flipped = true;
    }
    tampered.append(r);
  }
  EXPECT_EQ(code_of([&] { ElicitationRun::replay(tampered); }), ErrorCode::kReplayMismatch);
}

TEST(ElicitationRun, LogIsDeterministicGivenSeed) {
  auto one = [](std::uint64_t seed) {
    ElicitationRun run(config_for(ProtocolKind::kPrimedPlus, seed), "z",
                       ElicitationRun::fixed_clock("T"));
    auto who = SimulatedRespondent(sample_ground_truth(UtilityFamily::kConcave,
                                                       run.config().space, seed),
                                   BiasModel::defaults(run.config().space), ResponseModel{},
                                   seed);
    run_protocol(run, who);
    return run.log().to_jsonl();
  };
  EXPECT_EQ(one(17), one(17));
  EXPECT_NE(one(17), one(18));
}

TEST(ElicitationRun, RunConfigJsonRoundTrip) {
  RunConfig c = config_for(ProtocolKind::kPrimedPlus, 77);
  c.k = 20;
  c.primed_plus_prefix = 3;
  c.scheduling = ScheduleMode::kRoundRobin;
  c.conflict_policy = ConflictPolicy::kCollapseToP;
  const RunConfig back = run_config_from_json(run_config_to_json(c));
  EXPECT_EQ(run_config_to_json(back), run_config_to_json(c));
  EXPECT_EQ(back.protocol.experiential_prefix, 3);
}

}  // namespace
}  // namespace expelicit
