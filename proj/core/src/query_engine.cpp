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

#include "expelicit/query_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "expelicit/error.hpp"
#include "expelicit/rng.hpp"

namespace expelicit {

std::string_view to_string(Delivery delivery) {
  return delivery == Delivery::kConceptual ? "conceptual" : "experiential";
}

std::string_view to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::kConceptual: return "conceptual";
    case ProtocolKind::kExperiential: return "experiential";
    case ProtocolKind::kPrimed: return "primed";
    case ProtocolKind::kPrimedPlus: return "primed_plus";
  }
  return "conceptual";
}

ProtocolKind parse_protocol_kind(std::string_view text) {
  if (text == "conceptual") return ProtocolKind::kConceptual;
  if (text == "experiential") return ProtocolKind::kExperiential;
  if (text == "primed") return ProtocolKind::kPrimed;
  if (text == "primed_plus" || text == "primed+") return ProtocolKind::kPrimedPlus;
  throw Error(ErrorCode::kInvalidConfig, "unknown protocol '" + std::string(text) + "'");
}

Protocol Protocol::make(ProtocolKind kind, int primed_plus_prefix) {
  switch (kind) {
    case ProtocolKind::kConceptual: return {kind, false, 0};
    case ProtocolKind::kExperiential:
      return {kind, false, std::numeric_limits<int>::max()};
    case ProtocolKind::kPrimed: return {kind, true, 0};
    case ProtocolKind::kPrimedPlus: return {kind, true, primed_plus_prefix};
  }
  return {};
}

std::string_view to_string(ScheduleMode mode) {
  return mode == ScheduleMode::kSequential ? "sequential" : "round_robin";
}

ScheduleMode parse_schedule_mode(std::string_view text) {
  if (text == "sequential") return ScheduleMode::kSequential;
  if (text == "round_robin" || text == "round-robin") return ScheduleMode::kRoundRobin;
  throw Error(ErrorCode::kInvalidConfig, "unknown scheduling mode '" + std::string(text) + "'");
}

std::string_view to_string(ArmOrder order) {
  return order == ArmOrder::kGambleFirst ? "gamble_first" : "sure_first";
}

Schedule::Schedule(std::vector<Outcome> order, ScheduleMode mode)
    : order_(std::move(order)), mode_(mode) {}

Schedule Schedule::seeded(const OutcomeSpace& space, ScheduleMode mode, std::uint64_t seed) {
  auto order = space.interior();
  Rng rng(seed);
  seeded_shuffle(order, rng);
  return Schedule(std::move(order), mode);
}

std::optional<Outcome> Schedule::select(const UtilityState& state, double threshold) const {
  const std::size_t n = order_.size();
  const std::size_t start = mode_ == ScheduleMode::kSequential ? 0 : cursor_;
  for (std::size_t i = 0; i < n; ++i) {
    const Outcome& o = order_[(start + i) % n];
    if (!state.converged(o, threshold)) return o;
  }
  return std::nullopt;
}

void Schedule::note_asked(const Outcome& o) {
  auto it = std::find(order_.begin(), order_.end(), o);
  if (it != order_.end()) {
    cursor_ = (static_cast<std::size_t>(it - order_.begin()) + 1) % order_.size();
  }
}

Probability bisection_point(const UtilityInterval& iv) {
  const int sum = iv.lo.ticks() + iv.hi.ticks();
  return {(sum + 1) / 2, iv.lo.divisions()};
}

std::optional<BoundQuery> next_query(const UtilityState& state, const Schedule& schedule,
                                     const Protocol& protocol, int ordinal,
                                     double threshold) {
  if (state.all_converged(threshold)) return std::nullopt;
  const auto target = schedule.select(state, threshold);
  if (!target) return std::nullopt;
  const UtilityInterval& iv = state.interval(*target);
  const Probability p = bisection_point(iv);
  if (!(iv.lo < p && p < iv.hi)) {
    throw Error(ErrorCode::kScheduleStall,
                "no grid probability strictly inside [" + iv.lo.to_string() + ", " +
                    iv.hi.to_string() + "] for " + target->to_string());
  }
  return BoundQuery{*target, p, protocol.delivery_for(ordinal), ordinal};
}

int ExperientialPlan::best_count() const {
  return static_cast<int>(std::count_if(gamble_arm.begin(), gamble_arm.end(),
                                        [&](const TaskSpec& t) { return t.outcome == best; }));
}

ExperientialPlan build_experiential_plan(const BoundQuery& q, const OutcomeSpace& space,
                                         int k, const TaskSource& source,
                                         std::uint64_t seed) {
  if (k < 1) throw Error(ErrorCode::kInvalidPlan, "k must be positive");
  const long long scaled = static_cast<long long>(q.p.ticks()) * k;
  if (scaled % q.p.divisions() != 0) {
    throw Error(ErrorCode::kInvalidPlan, "p*k = " + q.p.to_string() + "*" +
                                             std::to_string(k) + " is not integral");
  }
  const int best = static_cast<int>(scaled / q.p.divisions());

  std::vector<char> at_best(static_cast<std::size_t>(k), 0);
  std::fill_n(at_best.begin(), best, 1);
  Rng rng(derive_seed(seed, {0}));
  seeded_shuffle(at_best, rng);

  ExperientialPlan plan;
  plan.query = q;
  plan.best = space.best();
  plan.k = k;
  plan.arm_order = arm_order_for(q.ordinal);
  for (int i = 0; i < k; ++i) {
    const Outcome& o = at_best[static_cast<std::size_t>(i)] ? space.best() : space.worst();
    plan.gamble_arm.push_back(make_task(o, source.vocabularies, source.goal_complexity,
                                        derive_seed(seed, {1, static_cast<std::uint64_t>(i)})));
  }
  for (int i = 0; i < k; ++i) {
    plan.sure_arm.push_back(make_task(q.outcome, source.vocabularies, source.goal_complexity,
                                      derive_seed(seed, {2, static_cast<std::uint64_t>(i)})));
  }
  return plan;
}

std::string describe_outcome(const Outcome& o, const OutcomeSpace& space) {
  const auto& g = space.grid();
  std::ostringstream os;
  os << o.l << (o.l == 1 ? " icon, " : " icons, ");
  if (o.q == g.qualities.back() && o.q > 0) {
    os << "perfect help";
  } else if (o.q <= 0) {
    os << "no useful help";
  } else {
    os << "partial help";
  }
  os << (o.n == g.neediness_levels.front() ? ", standard styles"
                                           : ", hard styles (restricted palette)");
  return os.str();
}

ToolbarPreview preview_for(const Outcome& o, const OutcomeSpace& space,
                           const TaskSource& source) {
  ToolbarPreview preview;
  preview.outcome = o;
  preview.description = describe_outcome(o, space);
  const std::uint64_t seed =
      derive_seed(0x70726576696577ULL, {static_cast<std::uint64_t>(space.index_of(o))});
  const Vocabulary& vocab = source.vocabularies.at(o.n);
  preview.goal = generate_goal(vocab, source.goal_complexity, derive_seed(seed, {1}));
  preview.toolbar = generate_toolbar(o, preview.goal, vocab, derive_seed(seed, {2}));
  preview.quality = quality_toolbar(preview.toolbar, preview.goal);
  return preview;
}

namespace {

int percent(double fraction) { return static_cast<int>(std::lround(fraction * 100.0)); }

}  // namespace

ConceptualPresentation build_conceptual_presentation(const BoundQuery& q,
                                                     const OutcomeSpace& space,
                                                     const TaskSource& source) {
  ConceptualPresentation out;
  out.query = q;
  out.best = preview_for(space.best(), space, source);
  out.worst = preview_for(space.worst(), space, source);
  out.sure = preview_for(q.outcome, space, source);

  std::ostringstream gamble;
  gamble << "Adaptive system: ";
  if (q.p.ticks() == q.p.divisions()) {
    gamble << "always the best interface (" << out.best.description << ")";
  } else if (q.p.ticks() == 0) {
    gamble << "always the worst interface (" << out.worst.description << ")";
  } else {
    const int best = percent(q.p.value());
    gamble << best << "% best / " << (100 - best) << "% worst (best: "
           << out.best.description << "; worst: " << out.worst.description << ")";
  }
  out.gamble_text = gamble.str();
  out.sure_text = "Static system: always " + out.sure.description;
  return out;
}

std::vector<Outcome> training_outcomes(const OutcomeSpace& space) {
  const auto& g = space.grid();
  const int n_lo = g.neediness_levels.front();
  const int n_hi = g.neediness_levels.back();
  const int l_lo = g.lengths.front();
  const int l_hi = g.lengths.back();
  const int q_lo = g.qualities.front();
  const int q_hi = g.qualities.back();
  std::vector<Outcome> out = {{n_lo, l_lo, q_hi}, {n_lo, l_lo, q_lo}, {n_lo, l_hi, q_hi},
                              {n_lo, l_hi, q_lo}, {n_hi, l_lo, q_hi}, {n_hi, l_hi, q_lo}};
  std::vector<Outcome> unique;
  for (const auto& o : out) {
    if (std::find(unique.begin(), unique.end(), o) == unique.end()) unique.push_back(o);
  }
  return unique;
}

}  // namespace expelicit
