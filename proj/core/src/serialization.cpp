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

#include "expelicit/serialization.hpp"

#include "expelicit/error.hpp"

namespace expelicit {

void to_json(json& j, const Outcome& o) { j = o.to_string(); }

void from_json(const json& j, Outcome& o) {
  if (!j.is_string()) throw Error(ErrorCode::kUnknownOutcome, "outcome must be a string");
  o = Outcome::parse(j.get<std::string>());
}

void to_json(json& j, const FontStyle& s) {
  j = json{{"bold", s.bold},
           {"underline", s.underline},
           {"italics", s.italics},
           {"shadow", s.shadow},
           {"size_increment", s.size_increment},
           {"color", s.color},
           {"font_family", s.font_family}};
}

void from_json(const json& j, FontStyle& s) {
  s = FontStyle{};
  s.bold = j.value("bold", false);
  s.underline = j.value("underline", false);
  s.italics = j.value("italics", false);
  s.shadow = j.value("shadow", false);
  s.size_increment = j.value("size_increment", false);
  s.color = j.value("color", 0);
  s.font_family = j.value("font_family", 0);
}

void to_json(json& j, const Icon& icon) { to_json(j, icon.style); }
void from_json(const json& j, Icon& icon) { from_json(j, icon.style); }

void to_json(json& j, const Toolbar& t) {
  j = json::array();
  for (const auto& icon : t.icons) j.push_back(icon);
}

void from_json(const json& j, Toolbar& t) {
  t.icons.clear();
  for (const auto& e : j) t.icons.push_back(e.get<Icon>());
}

void to_json(json& j, const HighlightGoal& g) {
  j = json{{"target", g.target}, {"baseline", g.baseline}};
}

void from_json(const json& j, HighlightGoal& g) {
  g.target = j.at("target").get<FontStyle>();
  g.baseline = j.at("baseline").get<FontStyle>();
}

void to_json(json& j, const TaskSpec& t) {
  j = json{{"outcome", t.outcome},
           {"neediness", t.neediness},
           {"sentence", t.sentence},
           {"span", {t.span.begin, t.span.end}},
           {"goal", t.goal},
           {"toolbar", t.toolbar ? json(*t.toolbar) : json(nullptr)}};
}

void from_json(const json& j, TaskSpec& t) {
  t.outcome = j.at("outcome").get<Outcome>();
  t.neediness = j.at("neediness").get<int>();
  t.sentence = j.at("sentence").get<std::string>();
  t.span = {j.at("span").at(0).get<std::size_t>(), j.at("span").at(1).get<std::size_t>()};
  t.goal = j.at("goal").get<HighlightGoal>();
  if (j.at("toolbar").is_null()) {
    t.toolbar.reset();
  } else {
    t.toolbar = j.at("toolbar").get<Toolbar>();
  }
}

void to_json(json& j, const Vocabulary& v) {
  j = json{{"colors", v.colors}, {"fonts", v.fonts}};
}

void from_json(const json& j, Vocabulary& v) {
  v.colors = j.at("colors").get<std::vector<std::string>>();
  v.fonts = j.at("fonts").get<std::vector<std::string>>();
}

void to_json(json& j, const UtilityInterval& iv) {
  j = json::array({iv.lo.value(), iv.hi.value()});
}

UtilityInterval interval_from_json(const json& j, int divisions) {
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorCode::kLogFormat, "interval must be [lo, hi]");
  }
  return {Probability::from_double(j[0].get<double>(), divisions),
          Probability::from_double(j[1].get<double>(), divisions)};
}

void to_json(json& j, const ConflictEvent& e) {
  j = json{{"outcome", e.outcome},
           {"p", e.p.value()},
           {"answer", to_string(e.answer)},
           {"before", e.before},
           {"after", e.after},
           {"policy", to_string(e.policy)}};
}

void to_json(json& j, const BoundQuery& q) {
  j = json{{"ordinal", q.ordinal},
           {"outcome", q.outcome},
           {"p", q.p.value()},
           {"delivery", to_string(q.delivery)}};
}

void to_json(json& j, const ToolbarPreview& p) {
  j = json{{"outcome", p.outcome},
           {"description", p.description},
           {"goal", p.goal},
           {"toolbar", p.toolbar},
           {"quality", p.quality}};
}

void to_json(json& j, const ConceptualPresentation& p) {
  j = json{{"query", p.query},
           {"gamble_text", p.gamble_text},
           {"sure_text", p.sure_text},
           {"previews", {{"best", p.best}, {"worst", p.worst}, {"sure", p.sure}}}};
}

void to_json(json& j, const ExperientialPlan& plan) {
  j = json{{"query", plan.query},
           {"k", plan.k},
           {"arm_order", to_string(plan.arm_order)},
           {"gamble_best_count", plan.best_count()},
           {"gamble_worst_count", plan.k - plan.best_count()},
           {"gamble_arm", plan.gamble_arm},
           {"sure_arm", plan.sure_arm}};
}

json intervals_to_json(const UtilityState& state) {
  json j = json::object();
  const auto& outcomes = state.space().enumerate();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    j[outcomes[i].to_string()] = state.intervals()[i];
  }
  return j;
}

json utility_to_json(const UtilityFunction& u) {
  json j = json::object();
  const auto& outcomes = u.space().enumerate();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    j[outcomes[i].to_string()] = u.values()[i];
  }
  return j;
}

}  // namespace expelicit
