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
#include <optional>
#include <string_view>
#include <vector>

#include "expelicit/elicitation_run.hpp"
#include "expelicit/outcome_space.hpp"
#include "expelicit/query_engine.hpp"
#include "expelicit/rng.hpp"
#include "expelicit/utility_bounds.hpp"

namespace expelicit {

// Shape of the utility-vs-quality profile at fixed (n, l).
enum class UtilityFamily {
  kConvex,
  kConcave,
  kLinear,
  kFlatBelowPerfectQ,  // no value until quality is perfect
  kFlatAboveL1,        // quality only matters on the shortest toolbar
  kCustom,
};

std::string_view to_string(UtilityFamily family);
UtilityFamily parse_utility_family(std::string_view text);

struct GroundTruthUtility {
  UtilityFunction values;
  UtilityFamily family = UtilityFamily::kCustom;
};

// Anchors at 1 and 0, non-decreasing in q at fixed (n, l), non-increasing in
// l at fixed (n, q). Returns a description of the first violation.
std::optional<std::string> check_ground_truth(const UtilityFunction& u);

// Samples a utility of the given family satisfying check_ground_truth.
// kCustom is rejected (use custom_ground_truth).
GroundTruthUtility sample_ground_truth(UtilityFamily family, const OutcomeSpace& space,
                                       std::uint64_t seed);

// Throws kInvalidSample when `values` violates the invariants.
GroundTruthUtility custom_ground_truth(const OutcomeSpace& space, std::vector<double> values);

// Systematic misprediction under conceptual delivery: utilities of the
// attenuated outcomes are scaled down by `attenuation`, those of the
// inflated outcomes raised by `inflation`. Both shrink by a factor
// (1 - decay) per experiential query already answered.
struct BiasModel {
  double attenuation = 0.3;
  double inflation = 0.15;
  double decay = 0.2;
  std::vector<Outcome> attenuated;
  std::vector<Outcome> inflated;

  // Attenuates every intermediate-quality outcome plus lowest-quality
  // outcomes on all but the longest toolbar; inflates the longest
  // perfect-quality toolbar at the highest neediness.
  static BiasModel defaults(const OutcomeSpace& space);
  // No bias at all.
  static BiasModel none() { return BiasModel{0.0, 0.0, 0.0, {}, {}}; }

  bool attenuates(const Outcome& o) const;
  bool inflates(const Outcome& o) const;
  void validate() const;
};

struct ResponseModel {
  enum class Mode { kDeterministic, kLogistic };

  Mode mode = Mode::kLogistic;
  double temperature_conceptual = 0.1;
  double temperature_experiential = 0.05;
  double lapse = 0.02;

  static ResponseModel deterministic() {
    return ResponseModel{Mode::kDeterministic, 0.1, 0.05, 0.0};
  }

  double temperature(Delivery delivery) const {
    return delivery == Delivery::kExperiential ? temperature_experiential
                                               : temperature_conceptual;
  }
  void validate() const;
};

double perceived_utility(const GroundTruthUtility& truth, const BiasModel& bias,
                         const Outcome& o, Delivery delivery, int experience_count);

// Compares the gamble's value against the perceived utility of the sure
// outcome. Deterministic mode answers exactly (indifferent on equality);
// logistic mode samples with the delivery temperature, then flips with the
// lapse probability.
Answer simulate_answer(double gamble_value, double perceived, Delivery delivery,
                       const ResponseModel& model, Rng& rng);

// Picks the best icon when it saves anything and fixes the rest by hand.
TaskCompletion simulate_task(const TaskSpec& task);

// Respondent backed by a ground-truth utility. Counts the experiential
// queries it has answered, which drives the bias decay.
class SimulatedRespondent : public Respondent {
 public:
  SimulatedRespondent(GroundTruthUtility truth, BiasModel bias, ResponseModel response,
                      std::uint64_t seed);

  std::optional<TaskCompletion> complete_task(const TaskStep& step) override;
  std::optional<Answer> answer(const PresentationStep& step) override;
  std::optional<Answer> answer(const PreferencePromptStep& step) override;

  // Abandon (return nullopt) once this many steps have been handled.
  void abandon_after(std::size_t steps) { abandon_after_ = steps; }

  const GroundTruthUtility& truth() const noexcept { return truth_; }
  int experience_count() const noexcept { return experience_count_; }

 private:
  bool abandoning();

  GroundTruthUtility truth_;
  BiasModel bias_;
  ResponseModel response_;
  Rng rng_;
  int experience_count_ = 0;
  std::size_t handled_ = 0;
  std::optional<std::size_t> abandon_after_;
};

}  // namespace expelicit
