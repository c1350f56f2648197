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

#include "expelicit/utility_bounds.hpp"

#include <algorithm>

#include "expelicit/error.hpp"

namespace expelicit {

std::string_view to_string(Answer answer) {
  switch (answer) {
    case Answer::kPrefersGamble: return "prefers_gamble";
    case Answer::kPrefersSure: return "prefers_sure";
    case Answer::kIndifferent: return "indifferent";
  }
  return "indifferent";
}

Answer parse_answer(std::string_view text) {
  if (text == "prefers_gamble") return Answer::kPrefersGamble;
  if (text == "prefers_sure") return Answer::kPrefersSure;
  if (text == "indifferent") return Answer::kIndifferent;
  throw Error(ErrorCode::kProtocolViolation, "unknown answer '" + std::string(text) + "'");
}

std::string_view to_string(ConflictPolicy policy) {
  switch (policy) {
    case ConflictPolicy::kTrustNew: return "trust-new";
    case ConflictPolicy::kIgnoreNew: return "ignore-new";
    case ConflictPolicy::kCollapseToP: return "collapse-to-p";
  }
  return "trust-new";
}

ConflictPolicy parse_conflict_policy(std::string_view text) {
  if (text == "trust-new") return ConflictPolicy::kTrustNew;
  if (text == "ignore-new") return ConflictPolicy::kIgnoreNew;
  if (text == "collapse-to-p") return ConflictPolicy::kCollapseToP;
  throw Error(ErrorCode::kInvalidConfig, "unknown conflict policy '" + std::string(text) + "'");
}

bool width_within(Probability width, double threshold) {
  return width.value() <= threshold + 1e-12;
}

UtilityFunction::UtilityFunction(OutcomeSpace space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size()) {
    throw Error(ErrorCode::kInvalidSample, "utility vector does not match the grid");
  }
}

namespace {

// Bracketing grid positions and the weight on the upper one.
struct Bracket {
  std::size_t lower;
  std::size_t upper;
  double weight;
};

Bracket bracket(const std::vector<int>& levels, int x, const char* name) {
  if (x < levels.front() || x > levels.back()) {
    throw Error(ErrorCode::kOutOfHull, std::string(name) + "=" + std::to_string(x) +
                                           " lies outside the elicited grid");
  }
  auto it = std::lower_bound(levels.begin(), levels.end(), x);
  const auto upper = static_cast<std::size_t>(it - levels.begin());
  if (*it == x) return {upper, upper, 0.0};
  const std::size_t lower = upper - 1;
  const double w = static_cast<double>(x - levels[lower]) /
                   static_cast<double>(levels[upper] - levels[lower]);
  return {lower, upper, w};
}

}  // namespace

double UtilityFunction::interpolate(int n, int l, int q) const {
  const auto& g = space_.grid();
  if (!std::binary_search(g.neediness_levels.begin(), g.neediness_levels.end(), n)) {
    throw Error(ErrorCode::kOutOfHull, "neediness n" + std::to_string(n) + " is not a grid level");
  }
  const Bracket bl = bracket(g.lengths, l, "l");
  const Bracket bq = bracket(g.qualities, q, "q");
  auto at = [&](std::size_t li, std::size_t qi) {
    return value(Outcome{n, g.lengths[li], g.qualities[qi]});
  };
  auto over_q = [&](std::size_t li) {
    return (1.0 - bq.weight) * at(li, bq.lower) + bq.weight * at(li, bq.upper);
  };
  return (1.0 - bl.weight) * over_q(bl.lower) + bl.weight * over_q(bl.upper);
}

UtilityState::UtilityState(OutcomeSpace space, ConflictPolicy policy)
    : space_(std::move(space)), policy_(policy) {
  const int d = space_.divisions();
  intervals_.reserve(space_.size());
  for (const auto& o : space_.enumerate()) {
    switch (space_.classify(o)) {
      case OutcomeRole::kBest:
        intervals_.push_back({Probability::one(d), Probability::one(d)});
        break;
      case OutcomeRole::kWorst:
        intervals_.push_back({Probability::zero(d), Probability::zero(d)});
        break;
      case OutcomeRole::kInterior:
        intervals_.push_back({Probability::zero(d), Probability::one(d)});
        break;
    }
  }
}

BoundUpdate UtilityState::apply_response(const Outcome& o, Probability p, Answer answer) {
  const std::size_t idx = space_.index_of(o);
  if (space_.is_anchor(o)) {
    throw Error(ErrorCode::kAnchorImmutable, o.to_string() + " is an anchor outcome");
  }
  const int d = space_.divisions();
  if (p.divisions() != d) {
    // Accept equivalent fractions expressed on another denominator.
    p = Probability::from_double(p.value(), d);
  }
  UtilityInterval& cur = intervals_[idx];
  BoundUpdate update{cur, cur, std::nullopt};

  UtilityInterval next = cur;
  bool contradicts = false;
  switch (answer) {
    case Answer::kPrefersGamble:
      next.hi = std::min(cur.hi, p);
      contradicts = next.hi < cur.lo;
      break;
    case Answer::kPrefersSure:
      next.lo = std::max(cur.lo, p);
      contradicts = next.lo > cur.hi;
      break;
    case Answer::kIndifferent:
      next = {p, p};
      contradicts = p < cur.lo || p > cur.hi;
      break;
  }

  if (contradicts) {
    switch (policy_) {
      case ConflictPolicy::kTrustNew:
        if (answer == Answer::kPrefersGamble) next = {Probability::zero(d), p};
        if (answer == Answer::kPrefersSure) next = {p, Probability::one(d)};
        break;
      case ConflictPolicy::kIgnoreNew:
        next = cur;
        break;
      case ConflictPolicy::kCollapseToP:
        next = {p, p};
        break;
    }
    update.conflict = ConflictEvent{o, p, answer, cur, next, policy_};
    conflicts_.push_back(*update.conflict);
  }
  cur = next;
  update.after = cur;
  return update;
}

bool UtilityState::converged(const Outcome& o, double threshold) const {
  return width_within(width(o), threshold);
}

bool UtilityState::all_converged(double threshold) const {
  return std::all_of(intervals_.begin(), intervals_.end(), [&](const UtilityInterval& iv) {
    return width_within(iv.width(), threshold);
  });
}

UtilityFunction UtilityState::midpoint_utility() const {
  std::vector<double> values;
  values.reserve(intervals_.size());
  for (const auto& iv : intervals_) values.push_back(iv.midpoint());
  return UtilityFunction(space_, std::move(values));
}

}  // namespace expelicit
