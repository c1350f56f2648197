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

#include "expelicit/decision_model.hpp"
#include "expelicit/error.hpp"
#include "support/oracles.hpp"

namespace expelicit {
namespace {

HighlightGoal goal_with(bool bold, int color) {
  HighlightGoal g;
  g.target.bold = bold;
  g.target.color = color;
  g.target.italics = true;
  return g;
}

UtilityFunction linear_utility() {
  // u = q/4 * (1 - 0.05 (l - 1)) at n0, halved at n1; anchors fixed.
  const OutcomeSpace space;
  std::vector<double> v;
  for (const auto& o : space.enumerate()) {
    double x = (o.q / 4.0) * (1.0 - 0.05 * (o.l - 1)) * (o.n == 0 ? 1.0 : 0.5);
    if (o == space.best()) x = 1.0;
    if (o == space.worst()) x = 0.0;
    v.push_back(x);
  }
  return UtilityFunction(space, v);
}

oracle::GridUtility grid_of(const UtilityFunction& u) {
  const auto& g = u.space().grid();
  oracle::GridUtility out{g.neediness_levels, g.lengths, g.qualities, {}};
  for (const auto& o : u.space().enumerate()) out.value[o.n][o.l][o.q] = u.value(o);
  return out;
}

TEST(Belief, BoldEventExample) {
  const GoalBelief prior(GoalLibrary::uniform({goal_with(true, 1), goal_with(false, 1)}));
  const GoalBelief post = update_belief(prior, {Feature::kBold, 1}, 0.1);
  EXPECT_NEAR(post.posterior()[0], 0.9, 1e-12);
  EXPECT_NEAR(post.posterior()[1], 0.1, 1e-12);
}

TEST(Belief, PosteriorIsADistribution) {
  const GoalBelief prior(GoalLibrary{{goal_with(true, 1), goal_with(false, 2), goal_with(true, 3)},
                                     {0.2, 0.5, 0.3}});
  GoalBelief b = prior;
  for (const EventObservation e : {EventObservation{Feature::kBold, 1},
                                   EventObservation{Feature::kColor, 3},
                                   EventObservation{Feature::kItalics, 0}}) {
    b = update_belief(b, e, 0.2);
    double sum = 0.0;
    for (double p : b.posterior()) {
      EXPECT_GE(p, 0.0);
      sum += p;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Belief, UpdatesCommute) {
  const GoalBelief prior(GoalLibrary{{goal_with(true, 1), goal_with(false, 2), goal_with(true, 3)},
                                     {0.2, 0.5, 0.3}});
  const EventObservation a{Feature::kBold, 1};
  const EventObservation c{Feature::kColor, 3};
  const GoalBelief ac = update_belief(update_belief(prior, a, 0.15), c, 0.15);
  const GoalBelief ca = update_belief(update_belief(prior, c, 0.15), a, 0.15);
  for (std::size_t i = 0; i < prior.size(); ++i) {
    EXPECT_NEAR(ac.posterior()[i], ca.posterior()[i], 1e-12);
  }
}

TEST(Belief, RejectsBadNoiseAndEmptyLibrary) {
  const GoalBelief prior(GoalLibrary::uniform({goal_with(true, 1)}));
  EXPECT_THROW(update_belief(prior, {Feature::kBold, 1}, 0.0), Error);
  EXPECT_THROW(update_belief(prior, {Feature::kBold, 1}, 1.0), Error);
  EXPECT_THROW(GoalBelief(GoalLibrary::uniform({})), Error);
  EXPECT_THROW(GoalBelief(GoalLibrary{{goal_with(true, 1)}, {0.7}}), Error);
}

TEST(Belief, ZeroPriorGoalStaysZero) {
  const GoalBelief prior(GoalLibrary{{goal_with(true, 1), goal_with(false, 1)}, {1.0, 0.0}});
  const GoalBelief post = update_belief(prior, {Feature::kBold, 0}, 0.1);
  EXPECT_DOUBLE_EQ(post.posterior()[0], 1.0);
  EXPECT_DOUBLE_EQ(post.posterior()[1], 0.0);
}

TEST(ExpectedUtility, MixtureOfQualities) {
  const UtilityFunction u = linear_utility();
  const HighlightGoal g1 = goal_with(true, 1);
  const HighlightGoal g2 = goal_with(false, 2);
  // One icon matching g1 exactly: quality 3 for g1; g2 gets nothing back.
  Toolbar t{{Icon{g1.target}}};
  ASSERT_EQ(quality_toolbar(t, g1), 3);
  const GoalBelief b(GoalLibrary::uniform({g1, g2}));
  const NoSuggestionUtility none = NoSuggestionUtility::from_utility(u);
  const double expected =
      0.5 * u.interpolate(0, 1, 3) + 0.5 * u.interpolate(0, 1, quality_toolbar(t, g2));
  EXPECT_NEAR(expected_utility(t, b, u, 0, none), expected, 1e-12);
}

TEST(ExpectedUtility, GridQualitiesExample) {
  // Belief (0.5, 0.5) over goals with toolbar qualities 4 and 0 at l1.
  const UtilityFunction u = linear_utility();
  HighlightGoal g1;
  g1.target.bold = g1.target.underline = g1.target.italics = g1.target.shadow = true;
  HighlightGoal g2;
  g2.target.color = 3;
  Toolbar t{{Icon{g1.target}}};
  ASSERT_EQ(quality_toolbar(t, g1), 4);
  ASSERT_EQ(quality_toolbar(t, g2), 0);
  const GoalBelief b(GoalLibrary::uniform({g1, g2}));
  const double eu = expected_utility(t, b, u, 0, NoSuggestionUtility::from_utility(u));
  EXPECT_NEAR(eu, 0.5 * u.value({0, 1, 4}) + 0.5 * u.value({0, 1, 0}), 1e-12);
}

TEST(ChooseAction, PerfectToolbarBeatsNone) {
  const UtilityFunction u = linear_utility();
  HighlightGoal g;
  g.target.bold = g.target.underline = g.target.italics = g.target.shadow = true;
  const GoalBelief b(GoalLibrary::uniform({g}));
  NoSuggestionUtility none;
  none.by_level = {{0, 0.6}, {1, 0.6}};
  const Decision d = choose_action({Toolbar{{Icon{g.target}}}}, b, u, 0, none);
  ASSERT_TRUE(d.candidate.has_value());
  EXPECT_EQ(*d.candidate, 0u);
  EXPECT_DOUBLE_EQ(d.expected_utility, 1.0);
  EXPECT_DOUBLE_EQ(d.no_suggestion_utility, 0.6);
}

TEST(ChooseAction, NoneWinsTiesAndEmptyCandidates) {
  const UtilityFunction u = linear_utility();
  HighlightGoal g;
  g.target.bold = g.target.underline = g.target.italics = g.target.shadow = true;
  const GoalBelief b(GoalLibrary::uniform({g}));
  NoSuggestionUtility none;
  none.by_level = {{0, 1.0}, {1, 1.0}};
  EXPECT_FALSE(choose_action({Toolbar{{Icon{g.target}}}}, b, u, 0, none).candidate);
  EXPECT_FALSE(choose_action({}, b, u, 0, none).candidate);
}

TEST(ChooseAction, ShorterToolbarWinsTie) {
  const UtilityFunction u = linear_utility();
  HighlightGoal g;
  g.target.bold = true;
  const GoalBelief b(GoalLibrary::uniform({g}));
  NoSuggestionUtility none;
  none.by_level = {{0, 2.0}, {1, 2.0}};
  // Both toolbars are worth nothing; none is above both, so nothing is shown.
  EXPECT_FALSE(choose_action({Toolbar{{Icon{}, Icon{}}}, Toolbar{{Icon{}}}}, b, u, 0, none)
                   .candidate);
  none.by_level = {{0, -1.0}, {1, -1.0}};
  const Decision d = choose_action({Toolbar{{Icon{}, Icon{}}}, Toolbar{{Icon{}}}}, b,
                                   UtilityFunction(u.space(), std::vector<double>(18, 0.0)),
                                   0, none);
  ASSERT_TRUE(d.candidate);
  EXPECT_EQ(*d.candidate, 1u);
}

TEST(ChooseAction, FromUtilityUsesShortestLowestQuality) {
  const UtilityFunction u = linear_utility();
  const NoSuggestionUtility none = NoSuggestionUtility::from_utility(u);
  EXPECT_DOUBLE_EQ(none.at(0), u.value({0, 1, 0}));
  EXPECT_DOUBLE_EQ(none.at(1), u.value({1, 1, 0}));
  EXPECT_THROW(none.at(7), Error);
}

class RandomDecision : public ::testing::TestWithParam<int> {};

TEST_P(RandomDecision, MatchesExhaustiveOracle) {
  for (int k = 0; k < 50; ++k) {
    const auto d = oracle::random_decision_instance(
        static_cast<std::uint64_t>(GetParam() * 1000 + k), 4, 6);
    const UtilityFunction u(OutcomeSpace{}, d.values);
    const GoalBelief b(d.goals, d.belief);
    NoSuggestionUtility none;
    none.by_level = {{0, d.none}, {1, d.none}};
    const Decision got = choose_action(d.candidates, b, u, d.neediness, none);
    const auto want = oracle::exhaustive_choice(d.candidates, d.goals, d.belief, grid_of(u),
                                                d.neediness, d.none);
    ASSERT_EQ(got.candidate, want) << "instance " << k;
    for (std::size_t i = 0; i < d.candidates.size(); ++i) {
      double eu = 0.0;
      for (std::size_t g = 0; g < d.goals.size(); ++g) {
        eu += d.belief[g] * grid_of(u).at(d.neediness,
                                          static_cast<int>(d.candidates[i].length()),
                                          oracle::hamming_quality(d.candidates[i], d.goals[g]));
      }
      EXPECT_NEAR(got.candidate_utilities[i], eu, 1e-12);
    }
  }
}

TEST_P(RandomDecision, AffineInvariance) {
  for (int k = 0; k < 50; ++k) {
    const auto d = oracle::random_decision_instance(
        static_cast<std::uint64_t>(GetParam() * 1000 + k), 4, 6);
    const GoalBelief b(d.goals, d.belief);
    NoSuggestionUtility none;
    none.by_level = {{0, d.none}, {1, d.none}};
    const Decision base =
        choose_action(d.candidates, b, UtilityFunction(OutcomeSpace{}, d.values), d.neediness, none);
    std::vector<double> scaled;
    for (double v : d.values) scaled.push_back(2.5 * v - 0.75);
    NoSuggestionUtility none2;
    none2.by_level = {{0, 2.5 * d.none - 0.75}, {1, 2.5 * d.none - 0.75}};
    const Decision moved =
        choose_action(d.candidates, b, UtilityFunction(OutcomeSpace{}, scaled), d.neediness, none2);
    EXPECT_EQ(base.candidate, moved.candidate) << "instance " << k;
  }
}

TEST_P(RandomDecision, DominatedCandidateChangesNothing) {
  for (int k = 0; k < 50; ++k) {
    auto d = oracle::random_decision_instance(
        static_cast<std::uint64_t>(GetParam() * 1000 + k), 4, 6);
    const UtilityFunction u(OutcomeSpace{}, d.values);
    const GoalBelief b(d.goals, d.belief);
    NoSuggestionUtility none;
    none.by_level = {{0, d.none}, {1, d.none}};
    const Decision before = choose_action(d.candidates, b, u, d.neediness, none);
    // Worth strictly less than the current best action.
    Toolbar worse;
    for (int i = 0; i < 10; ++i) worse.icons.push_back(Icon{});
    const double w = expected_utility(worse, b, u, d.neediness, none);
    if (!(w < before.expected_utility - 1e-6)) continue;
    d.candidates.push_back(worse);
    const Decision after = choose_action(d.candidates, b, u, d.neediness, none);
    EXPECT_EQ(before.candidate, after.candidate);
    EXPECT_DOUBLE_EQ(before.expected_utility, after.expected_utility);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomDecision, ::testing::Range(1, 9));

}  // namespace
}  // namespace expelicit
