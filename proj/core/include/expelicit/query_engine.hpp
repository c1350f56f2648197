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
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expelicit/outcome_space.hpp"
#include "expelicit/task_domain.hpp"
#include "expelicit/utility_bounds.hpp"

namespace expelicit {

enum class Delivery { kConceptual, kExperiential };

std::string_view to_string(Delivery delivery);

enum class ProtocolKind { kConceptual, kExperiential, kPrimed, kPrimedPlus };

std::string_view to_string(ProtocolKind kind);
ProtocolKind parse_protocol_kind(std::string_view text);

inline constexpr int kDefaultPrimedPlusPrefix = 5;

struct Protocol {
  ProtocolKind kind = ProtocolKind::kConceptual;
  bool training = false;
  // Number of leading queries delivered experientially.
  int experiential_prefix = 0;

  static Protocol make(ProtocolKind kind, int primed_plus_prefix = kDefaultPrimedPlusPrefix);

  // Delivery for the 1-based query ordinal; a pure function of the protocol.
  Delivery delivery_for(int ordinal) const {
    return ordinal <= experiential_prefix ? Delivery::kExperiential : Delivery::kConceptual;
  }
};

struct BoundQuery {
  Outcome outcome;
  Probability p;
  Delivery delivery = Delivery::kConceptual;
  int ordinal = 0;  // 1-based
};

enum class ScheduleMode { kSequential, kRoundRobin };

std::string_view to_string(ScheduleMode mode);
ScheduleMode parse_schedule_mode(std::string_view text);

// Order in which interior outcomes are elicited. Sequential mode works on
// one outcome until it converges; round-robin rotates after every query.
class Schedule {
 public:
  Schedule(std::vector<Outcome> order, ScheduleMode mode);

  // Interior outcomes in a seeded uniform order.
  static Schedule seeded(const OutcomeSpace& space, ScheduleMode mode, std::uint64_t seed);

  const std::vector<Outcome>& order() const noexcept { return order_; }
  ScheduleMode mode() const noexcept { return mode_; }

  // Next outcome whose width exceeds `threshold`, or nullopt.
  std::optional<Outcome> select(const UtilityState& state, double threshold) const;
  // Records that a query about `o` was emitted (advances round-robin).
  void note_asked(const Outcome& o);

 private:
  std::vector<Outcome> order_;
  ScheduleMode mode_;
  std::size_t cursor_ = 0;
};

// Midpoint of `iv` rounded half-up onto the grid.
Probability bisection_point(const UtilityInterval& iv);

// Next bisection query, or nullopt once every outcome has width <= threshold.
// Throws kScheduleStall when the rounded midpoint is not strictly inside an
// interval that still exceeds the threshold.
std::optional<BoundQuery> next_query(const UtilityState& state, const Schedule& schedule,
                                     const Protocol& protocol, int ordinal,
                                     double threshold = kDefaultConvergenceWidth);

enum class ArmOrder { kGambleFirst, kSureFirst };

std::string_view to_string(ArmOrder order);

// Gamble-first on odd ordinals, sure-first on even ones.
inline ArmOrder arm_order_for(int ordinal) {
  return ordinal % 2 == 1 ? ArmOrder::kGambleFirst : ArmOrder::kSureFirst;
}

// Where tasks come from: vocabularies per neediness level and the number of
// features every goal changes.
struct TaskSource {
  VocabularySet vocabularies;
  int goal_complexity = 4;
};

struct ExperientialPlan {
  BoundQuery query;
  std::vector<TaskSpec> gamble_arm;  // best/worst mixture in random order
  std::vector<TaskSpec> sure_arm;    // all at the queried outcome
  Outcome best;  // the outcome the gamble arm mixes in with probability p
  int k = 10;
  ArmOrder arm_order = ArmOrder::kGambleFirst;

  int best_count() const;
  // Fraction of gamble-arm tasks shown at the best outcome.
  double realized_fraction() const {
    return static_cast<double>(best_count()) / static_cast<double>(k);
  }
  // Arms in delivery order.
  const std::vector<TaskSpec>& first_arm() const {
    return arm_order == ArmOrder::kGambleFirst ? gamble_arm : sure_arm;
  }
  const std::vector<TaskSpec>& second_arm() const {
    return arm_order == ArmOrder::kGambleFirst ? sure_arm : gamble_arm;
  }
};

// Exactly p*k best-outcome tasks and (1-p)*k worst-outcome tasks, shuffled.
// Throws kInvalidPlan when p*k is not integral.
ExperientialPlan build_experiential_plan(const BoundQuery& q, const OutcomeSpace& space,
                                         int k, const TaskSource& source,
                                         std::uint64_t seed);

// Static description of an outcome's toolbar for conceptual queries.
struct ToolbarPreview {
  Outcome outcome;
  std::string description;
  HighlightGoal goal;
  Toolbar toolbar;
  int quality = 0;
};

struct ConceptualPresentation {
  BoundQuery query;
  std::string gamble_text;
  std::string sure_text;
  ToolbarPreview best;
  ToolbarPreview worst;
  ToolbarPreview sure;
};

// "5 icons, partial help, standard styles"
std::string describe_outcome(const Outcome& o, const OutcomeSpace& space);

// Preview toolbars are fixed per outcome so every query shows the same image.
ToolbarPreview preview_for(const Outcome& o, const OutcomeSpace& space,
                           const TaskSource& source);

ConceptualPresentation build_conceptual_presentation(const BoundQuery& q,
                                                     const OutcomeSpace& space,
                                                     const TaskSource& source);

// Familiarization outcomes: {shortest, longest} x {lowest, highest quality}
// at the lowest neediness, plus the two extreme outcomes at the highest
// neediness.
std::vector<Outcome> training_outcomes(const OutcomeSpace& space);

}  // namespace expelicit
