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

#include <nlohmann/json.hpp>

#include "expelicit/outcome_space.hpp"
#include "expelicit/query_engine.hpp"
#include "expelicit/task_domain.hpp"
#include "expelicit/utility_bounds.hpp"

// JSON encodings shared by session logs and the HTTP API.
namespace expelicit {

using json = nlohmann::json;

void to_json(json& j, const Outcome& o);
void from_json(const json& j, Outcome& o);

void to_json(json& j, const FontStyle& s);
void from_json(const json& j, FontStyle& s);

void to_json(json& j, const Icon& icon);
void from_json(const json& j, Icon& icon);

void to_json(json& j, const Toolbar& t);
void from_json(const json& j, Toolbar& t);

void to_json(json& j, const HighlightGoal& g);
void from_json(const json& j, HighlightGoal& g);

void to_json(json& j, const TaskSpec& t);
void from_json(const json& j, TaskSpec& t);

void to_json(json& j, const Vocabulary& v);
void from_json(const json& j, Vocabulary& v);

// [lo, hi] as decimal numbers.
void to_json(json& j, const UtilityInterval& iv);
UtilityInterval interval_from_json(const json& j, int divisions);

void to_json(json& j, const ConflictEvent& e);

void to_json(json& j, const BoundQuery& q);

void to_json(json& j, const ToolbarPreview& p);
void to_json(json& j, const ConceptualPresentation& p);
void to_json(json& j, const ExperientialPlan& plan);

// {"n0,l1,q4": [lo, hi], ...}
json intervals_to_json(const UtilityState& state);
// {"n0,l1,q4": value, ...}
json utility_to_json(const UtilityFunction& u);

}  // namespace expelicit
