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

#include "expelicit/respondent_sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "expelicit/error.hpp"

namespace expelicit {

std::string_view to_string(UtilityFamily family) {
  switch (family) {
    case UtilityFamily::kConvex: return "convex";
    case UtilityFamily::kConcave: return "concave";
    case UtilityFamily::kLinear: return "linear";
    case UtilityFamily::kFlatBelowPerfectQ: return "flat-below-perfect-q";
    case UtilityFamily::kFlatAboveL1: return "flat-above-l1";
    case UtilityFamily::kCustom: return "custom";
  }
  return "custom";
}

UtilityFamily parse_utility_family(std::string_view text) {
  for (auto f : {UtilityFamily::kConvex, UtilityFamily::kConcave, UtilityFamily::kLinear,
                 UtilityFamily::kFlatBelowPerfectQ, UtilityFamily::kFlatAboveL1,
                 UtilityFamily::kCustom}) {
    if (to_string(f) == text) return f;
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown utility family '" + std::string(text) + "'");
}

std::optional<std::string> check_ground_truth(const UtilityFunction& u) {
  const OutcomeSpace& space = u.space();
  const auto& g = space.grid();
  constexpr double kTol = 1e-12;
  if (std::abs(u.value(space.best()) - 1.0) > kTol) return "u(best) != 1";
  if (std::abs(u.value(space.worst())) > kTol) return "u(worst) != 0";
  for (double v : u.values()) {
    if (!(v >= -kTol && v <= 1.0 + kTol)) return "value outside [0, 1]";
  }
  for (int n : g.neediness_levels) {
    for (int l : g.lengths) {
      for (std::size_t i = 1; i < g.qualities.size(); ++i) {
        const Outcome a{n, l, g.qualities[i - 1]};
        const Outcome b{n, l, g.qualities[i]};
        if (u.value(b) < u.value(a) - kTol) {
          return "decreasing in q between " + a.to_string() + " and " + b.to_string();
        }
      }
    }
    for (int q : g.qualities) {
      for (std::size_t i = 1; i < g.lengths.size(); ++i) {
        const Outcome a{n, g.lengths[i - 1], q};
        const Outcome b{n, g.lengths[i], q};
        if (u.value(b) > u.value(a) + kTol) {
          return "increasing in l between " + a.to_string() + " and " + b.to_string();
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

double profile(UtilityFamily family, double f, double exponent) {
  switch (family) {
    case UtilityFamily::kConvex:
    case UtilityFamily::kConcave: return std::pow(f, exponent);
    case UtilityFamily::kFlatBelowPerfectQ: return f >= 1.0 ? 1.0 : 0.0;
    default: return f;
  }
}

}  // namespace

GroundTruthUtility sample_ground_truth(UtilityFamily family, const OutcomeSpace& space,
                                       std::uint64_t seed) {
  if (family == UtilityFamily::kCustom) {
    throw Error(ErrorCode::kInvalidConfig, "custom utilities are not sampled");
  }
  const auto& g = space.grid();
  Rng rng(seed);
  double exponent = 1.0;
  if (family == UtilityFamily::kConvex) exponent = uniform_real(rng, 1.6, 3.0);
  if (family == UtilityFamily::kConcave) exponent = uniform_real(rng, 0.3, 0.65);

  const int q_lo = g.qualities.front();
  const int q_hi = g.qualities.back();
  std::vector<double> values(space.size(), 0.0);
  for (int n : g.neediness_levels) {
    // Per-length utility at the highest and lowest quality, both
    // non-increasing in length with bottom <= top.
    std::vector<double> top(g.lengths.size());
    std::vector<double> bottom(g.lengths.size());
    double ratio = uniform_real(rng, 0.05, 0.7);
    for (std::size_t j = 0; j < g.lengths.size(); ++j) {
      if (j == 0) {
        top[j] = n == space.best().n ? 1.0 : uniform_real(rng, 0.5, 1.0);
      } else {
        top[j] = top[j - 1] * (1.0 - uniform_real(rng, 0.0, 0.3));
        ratio *= uniform_real(rng, 0.4, 1.0);
      }
      bottom[j] = ratio * top[j];
    }
    if (n == space.worst().n) bottom.back() = 0.0;

    for (std::size_t j = 0; j < g.lengths.size(); ++j) {
      for (int q : g.qualities) {
        const double f = q_hi == q_lo ? 1.0
                                      : static_cast<double>(q - q_lo) /
                                            static_cast<double>(q_hi - q_lo);
        double shaped = profile(family, f, exponent);
        if (family == UtilityFamily::kFlatAboveL1 && j > 0) shaped = 0.0;
        const Outcome o{n, g.lengths[j], q};
        values[space.index_of(o)] = bottom[j] + (top[j] - bottom[j]) * shaped;
      }
    }
  }
  values[space.index_of(space.best())] = 1.0;
  values[space.index_of(space.worst())] = 0.0;
  for (double& v : values) v = std::clamp(v, 0.0, 1.0);

  UtilityFunction u(space, std::move(values));
  if (auto err = check_ground_truth(u)) {
    throw Error(ErrorCode::kInfeasible,
                "grid anchors do not admit a monotone " + std::string(to_string(family)) +
                    " utility: " + *err);
  }
  return {std::move(u), family};
}

GroundTruthUtility custom_ground_truth(const OutcomeSpace& space, std::vector<double> values) {
  UtilityFunction u(space, std::move(values));
  if (auto err = check_ground_truth(u)) throw Error(ErrorCode::kInvalidSample, *err);
  return {std::move(u), UtilityFamily::kCustom};
}

BiasModel BiasModel::defaults(const OutcomeSpace& space) {
  const auto& g = space.grid();
  BiasModel bias;
  for (const auto& o : space.interior()) {
    const bool mid_quality = o.q != g.qualities.front() && o.q != g.qualities.back();
    const bool short_useless = o.q == g.qualities.front() && o.l != g.lengths.back();
    if (mid_quality || short_useless) bias.attenuated.push_back(o);
  }
  const Outcome inflated{g.neediness_levels.back(), g.lengths.back(), g.qualities.back()};
  if (space.contains(inflated) && !space.is_anchor(inflated)) bias.inflated.push_back(inflated);
  return bias;
}

bool BiasModel::attenuates(const Outcome& o) const {
  return std::find(attenuated.begin(), attenuated.end(), o) != attenuated.end();
}

bool BiasModel::inflates(const Outcome& o) const {
  return std::find(inflated.begin(), inflated.end(), o) != inflated.end();
}

void BiasModel::validate() const {
  if (attenuation < 0.0 || attenuation > 1.0 || inflation < 0.0 || inflation > 1.0) {
    throw Error(ErrorCode::kInvalidConfig, "bias magnitudes must lie in [0, 1]");
  }
  if (decay < 0.0 || decay > 1.0) {
    throw Error(ErrorCode::kInvalidConfig, "bias decay must lie in [0, 1]");
  }
}

void ResponseModel::validate() const {
  if (!(lapse >= 0.0 && lapse < 0.5)) {
    throw Error(ErrorCode::kInvalidConfig, "lapse must lie in [0, 0.5)");
  }
  if (mode == Mode::kLogistic &&
      !(temperature_experiential > 0.0 && temperature_experiential <= temperature_conceptual)) {
    throw Error(ErrorCode::kInvalidConfig,
                "temperatures must satisfy 0 < experiential <= conceptual");
  }
}

double perceived_utility(const GroundTruthUtility& truth, const BiasModel& bias,
                         const Outcome& o, Delivery delivery, int experience_count) {
  const double u = truth.values.value(o);
  if (delivery == Delivery::kExperiential) return u;
  const double residual = std::pow(1.0 - bias.decay, experience_count);
  const double d = bias.attenuates(o) ? 1.0 : 0.0;
  const double d_inflate = bias.inflates(o) ? 1.0 : 0.0;
  const double biased =
      u * (1.0 - bias.attenuation * residual * d) + bias.inflation * residual * d_inflate;
  return std::clamp(biased, 0.0, 1.0);
}

Answer simulate_answer(double gamble_value, double perceived, Delivery delivery,
                       const ResponseModel& model, Rng& rng) {
  if (model.mode == ResponseModel::Mode::kDeterministic) {
    if (std::abs(gamble_value - perceived) <= 1e-12) return Answer::kIndifferent;
    return gamble_value > perceived ? Answer::kPrefersGamble : Answer::kPrefersSure;
  }
  const double tau = model.temperature(delivery);
  const double p_gamble = 1.0 / (1.0 + std::exp(-(gamble_value - perceived) / tau));
  bool gamble = uniform_unit(rng) < p_gamble;
  if (uniform_unit(rng) < model.lapse) gamble = !gamble;
  return gamble ? Answer::kPrefersGamble : Answer::kPrefersSure;
}

TaskCompletion simulate_task(const TaskSpec& task) {
  TaskCompletion c;
  c.applied = task.goal.target;
  std::optional<Icon> accepted;
  if (task.toolbar && !task.toolbar->icons.empty()) {
    int best_q = 0;
    for (std::size_t i = 0; i < task.toolbar->icons.size(); ++i) {
      const int q = quality_icon(task.toolbar->icons[i], task.goal);
      if (q > best_q) {
        best_q = q;
        c.accepted_icon = i;
      }
    }
    if (c.accepted_icon) accepted = task.toolbar->icons[*c.accepted_icon];
  }
  c.events = simulate_manual_completion(task.goal, accepted);
  return c;
}

SimulatedRespondent::SimulatedRespondent(GroundTruthUtility truth, BiasModel bias,
                                         ResponseModel response, std::uint64_t seed)
    : truth_(std::move(truth)), bias_(std::move(bias)), response_(response), rng_(seed) {
  bias_.validate();
  response_.validate();
}

bool SimulatedRespondent::abandoning() {
  if (abandon_after_ && handled_ >= *abandon_after_) {
    abandon_after_.reset();
    return true;
  }
  ++handled_;
  return false;
}

std::optional<TaskCompletion> SimulatedRespondent::complete_task(const TaskStep& step) {
  if (abandoning()) return std::nullopt;
  return simulate_task(step.task);
}

std::optional<Answer> SimulatedRespondent::answer(const PresentationStep& step) {
  if (abandoning()) return std::nullopt;
  const BoundQuery& q = step.presentation.query;
  const double u = perceived_utility(truth_, bias_, q.outcome, Delivery::kConceptual,
                                     experience_count_);
  return simulate_answer(q.p.value(), u, Delivery::kConceptual, response_, rng_);
}

std::optional<Answer> SimulatedRespondent::answer(const PreferencePromptStep& step) {
  if (abandoning()) return std::nullopt;
  const BoundQuery& q = step.plan.query;
  const double u = perceived_utility(truth_, bias_, q.outcome, Delivery::kExperiential,
                                     experience_count_);
  const Answer a = simulate_answer(step.plan.realized_fraction(), u, Delivery::kExperiential,
                                   response_, rng_);
  ++experience_count_;
  return a;
}

}  // namespace expelicit
