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

#include "expelicit/decision_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "expelicit/error.hpp"

namespace expelicit {

GoalLibrary GoalLibrary::uniform(std::vector<HighlightGoal> goals) {
  const std::size_t n = goals.size();
  return {std::move(goals), std::vector<double>(n, n ? 1.0 / static_cast<double>(n) : 0.0)};
}

void GoalLibrary::validate() const {
  if (goals.empty()) throw Error(ErrorCode::kInvalidConfig, "goal library is empty");
  if (prior.size() != goals.size()) {
    throw Error(ErrorCode::kInvalidConfig, "prior and goal library differ in size");
  }
  double sum = 0.0;
  for (double p : prior) {
    if (!(p >= 0.0)) throw Error(ErrorCode::kInvalidConfig, "prior has a negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidConfig, "prior does not sum to 1");
  }
}

GoalBelief::GoalBelief(const GoalLibrary& library)
    : goals_(library.goals), posterior_(library.prior) {
  library.validate();
}

GoalBelief::GoalBelief(std::vector<HighlightGoal> goals, std::vector<double> posterior)
    : goals_(std::move(goals)), posterior_(std::move(posterior)) {}

GoalBelief update_belief(const GoalBelief& belief, const EventObservation& event,
                         double noise) {
  if (!(noise > 0.0 && noise < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "observation noise must lie in (0, 1)");
  }
  std::vector<double> post(belief.size());
  double total = 0.0;
  for (std::size_t i = 0; i < belief.size(); ++i) {
    const bool match = belief.goals()[i].target.get(event.feature) == event.value;
    post[i] = belief.posterior()[i] * (match ? 1.0 - noise : noise);
    total += post[i];
  }
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kDegenerateBelief, "observation has zero likelihood under every goal");
  }
  for (double& p : post) p /= total;
  return GoalBelief(belief.goals(), std::move(post));
}

NoSuggestionUtility NoSuggestionUtility::from_utility(const UtilityFunction& u) {
  const auto& g = u.space().grid();
  NoSuggestionUtility none;
  for (int n : g.neediness_levels) {
    none.by_level[n] = u.value(Outcome{n, g.lengths.front(), g.qualities.front()});
  }
  return none;
}

double NoSuggestionUtility::at(int neediness) const {
  auto it = by_level.find(neediness);
  if (it == by_level.end()) {
    throw Error(ErrorCode::kInvalidConfig,
                "no no-suggestion utility for neediness " + std::to_string(neediness));
  }
  return it->second;
}

double expected_utility(const std::optional<Toolbar>& toolbar, const GoalBelief& belief,
                        const UtilityFunction& u, int neediness,
                        const NoSuggestionUtility& none) {
  if (!toolbar) return none.at(neediness);
  const int length = static_cast<int>(toolbar->length());
  double eu = 0.0;
  for (std::size_t i = 0; i < belief.size(); ++i) {
    const double w = belief.posterior()[i];
    if (w == 0.0) continue;
    eu += w * u.interpolate(neediness, length, quality_toolbar(*toolbar, belief.goals()[i]));
  }
  return eu;
}

namespace {

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kDecisionTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

Decision choose_action(const std::vector<Toolbar>& candidates, const GoalBelief& belief,
                       const UtilityFunction& u, int neediness,
                       const NoSuggestionUtility& none) {
  Decision d;
  d.no_suggestion_utility = none.at(neediness);
  d.expected_utility = d.no_suggestion_utility;
  d.candidate_utilities.reserve(candidates.size());
  for (const auto& t : candidates) {
    d.candidate_utilities.push_back(expected_utility(t, belief, u, neediness, none));
  }

  // Best candidate first, then compare against no suggestion.
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!best) {
      best = i;
      continue;
    }
    const double a = d.candidate_utilities[i];
    const double b = d.candidate_utilities[*best];
    if (nearly_equal(a, b)) {
      const auto& ti = candidates[i];
      const auto& tb = candidates[*best];
      if (ti.length() != tb.length()) {
        if (ti.length() < tb.length()) best = i;
      } else if (ti.icons < tb.icons) {
        best = i;
      }
    } else if (a > b) {
      best = i;
    }
  }
  if (best && !nearly_equal(d.candidate_utilities[*best], d.no_suggestion_utility) &&
      d.candidate_utilities[*best] > d.no_suggestion_utility) {
    d.candidate = best;
    d.expected_utility = d.candidate_utilities[*best];
  }
  return d;
}

}  // namespace expelicit
