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

#include "expelicit/task_domain.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "expelicit/error.hpp"
#include "expelicit/rng.hpp"

namespace expelicit {

std::string_view to_string(Feature feature) {
  switch (feature) {
    case Feature::kBold: return "bold";
    case Feature::kUnderline: return "underline";
    case Feature::kItalics: return "italics";
    case Feature::kShadow: return "shadow";
    case Feature::kSizeIncrement: return "size_increment";
    case Feature::kColor: return "color";
    case Feature::kFontFamily: return "font_family";
  }
  return "bold";
}

Feature parse_feature(std::string_view name) {
  for (Feature f : kAllFeatures) {
    if (to_string(f) == name) return f;
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown font feature '" + std::string(name) + "'");
}

int FontStyle::get(Feature feature) const {
  switch (feature) {
    case Feature::kBold: return bold;
    case Feature::kUnderline: return underline;
    case Feature::kItalics: return italics;
    case Feature::kShadow: return shadow;
    case Feature::kSizeIncrement: return size_increment;
    case Feature::kColor: return color;
    case Feature::kFontFamily: return font_family;
  }
  return 0;
}

void FontStyle::set(Feature feature, int value) {
  switch (feature) {
    case Feature::kBold: bold = value != 0; break;
    case Feature::kUnderline: underline = value != 0; break;
    case Feature::kItalics: italics = value != 0; break;
    case Feature::kShadow: shadow = value != 0; break;
    case Feature::kSizeIncrement: size_increment = value != 0; break;
    case Feature::kColor: color = value; break;
    case Feature::kFontFamily: font_family = value; break;
  }
}

Vocabulary Vocabulary::standard() {
  return {{"black", "red", "blue", "green", "orange", "purple", "teal", "brown"},
          {"Arial", "Times New Roman", "Courier New", "Georgia", "Verdana",
           "Tahoma", "Garamond", "Comic Sans MS", "Impact", "Trebuchet MS"},
          0};
}

Vocabulary Vocabulary::needy() {
  return {{"dark red", "maroon", "firebrick", "crimson", "red", "indian red",
           "light coral"},
          {"Arial", "Helvetica", "Verdana", "Tahoma"},
          1};
}

int Vocabulary::value_count(Feature feature) const {
  switch (feature) {
    case Feature::kColor: return static_cast<int>(colors.size());
    case Feature::kFontFamily: return static_cast<int>(fonts.size());
    default: return 2;
  }
}

bool Vocabulary::admits(const FontStyle& style) const {
  return style.color >= 0 && style.color < value_count(Feature::kColor) &&
         style.font_family >= 0 &&
         style.font_family < value_count(Feature::kFontFamily);
}

std::size_t Vocabulary::style_count() const {
  return 32u * colors.size() * fonts.size();
}

FontStyle Vocabulary::style_at(std::size_t index) const {
  FontStyle s;
  s.bold = index & 1u;
  s.underline = (index >> 1) & 1u;
  s.italics = (index >> 2) & 1u;
  s.shadow = (index >> 3) & 1u;
  s.size_increment = (index >> 4) & 1u;
  index >>= 5;
  s.color = static_cast<int>(index % colors.size());
  s.font_family = static_cast<int>(index / colors.size());
  return s;
}

std::vector<FontStyle> Vocabulary::all_styles() const {
  std::vector<FontStyle> out;
  out.reserve(style_count());
  for (std::size_t i = 0; i < style_count(); ++i) out.push_back(style_at(i));
  return out;
}

void Vocabulary::validate() const {
  if (colors.empty() || fonts.empty()) {
    throw Error(ErrorCode::kInvalidConfig,
                "vocabulary n" + std::to_string(neediness_level) +
                    " needs at least one color and one font");
  }
}

int HighlightGoal::complexity() const {
  return expelicit::complexity(target, baseline);
}

int complexity(const FontStyle& style, const FontStyle& baseline) {
  return fix_distance(baseline, style);
}

int fix_distance(const FontStyle& from, const FontStyle& to) {
  int n = 0;
  for (Feature f : kAllFeatures) n += from.get(f) != to.get(f);
  return n;
}

int quality_icon(const Icon& icon, const HighlightGoal& goal) {
  return std::max(0, goal.complexity() - fix_distance(icon.style, goal.target));
}

int quality_toolbar(const Toolbar& toolbar, const HighlightGoal& goal) {
  if (toolbar.icons.empty()) {
    throw Error(ErrorCode::kInvalidToolbar, "toolbar has no icons");
  }
  int best = 0;
  for (const auto& icon : toolbar.icons) best = std::max(best, quality_icon(icon, goal));
  return best;
}

HighlightGoal generate_goal(const Vocabulary& vocab, int complexity,
                            std::uint64_t seed) {
  std::vector<Feature> eligible;
  for (Feature f : kAllFeatures) {
    if (vocab.value_count(f) >= 2) eligible.push_back(f);
  }
  if (complexity < 0 || complexity > static_cast<int>(eligible.size())) {
    throw Error(ErrorCode::kInfeasible,
                "cannot build a goal of complexity " + std::to_string(complexity) +
                    " from " + std::to_string(eligible.size()) + " variable features");
  }
  Rng rng(seed);
  seeded_shuffle(eligible, rng);
  HighlightGoal goal{vocab.baseline(), vocab.baseline()};
  for (int i = 0; i < complexity; ++i) {
    const Feature f = eligible[static_cast<std::size_t>(i)];
    const int count = vocab.value_count(f);
    goal.target.set(f, 1 + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(count - 1))));
  }
  return goal;
}

Toolbar generate_toolbar(const Outcome& o, const HighlightGoal& goal,
                         const Vocabulary& vocab, std::uint64_t seed) {
  const int c = goal.complexity();
  if (o.l < 1) {
    throw Error(ErrorCode::kInfeasible, "toolbar length must be at least 1");
  }
  if (o.q < 0 || o.q > c) {
    throw Error(ErrorCode::kInfeasible, "quality " + std::to_string(o.q) +
                                            " exceeds goal complexity " +
                                            std::to_string(c));
  }
  if (!vocab.admits(goal.target) || !vocab.admits(goal.baseline)) {
    throw Error(ErrorCode::kInfeasible, "goal is not expressible in the vocabulary");
  }
  Rng rng(seed);

  std::optional<FontStyle> anchor_icon;
  if (o.q > 0) {
    std::vector<Feature> changed;
    for (Feature f : kAllFeatures) {
      if (goal.target.get(f) != goal.baseline.get(f)) changed.push_back(f);
    }
    seeded_shuffle(changed, rng);
    FontStyle s = goal.target;
    for (int i = 0; i < c - o.q; ++i) {
      const Feature f = changed[static_cast<std::size_t>(i)];
      s.set(f, goal.baseline.get(f));
    }
    anchor_icon = s;
  }

  auto eligible = [&](const FontStyle& s) {
    if (s == goal.baseline || (anchor_icon && s == *anchor_icon)) return false;
    const int q = quality_icon(Icon{s}, goal);
    return o.q > 0 ? q < o.q : q == 0;
  };

  const std::size_t need = static_cast<std::size_t>(o.l) - (anchor_icon ? 1u : 0u);
  std::vector<FontStyle> picked;
  std::set<FontStyle> seen;
  const std::size_t styles = vocab.style_count();
  const std::size_t attempts = 64 * need + 256;
  for (std::size_t a = 0; a < attempts && picked.size() < need; ++a) {
    const FontStyle s = vocab.style_at(uniform_index(rng, styles));
    if (eligible(s) && seen.insert(s).second) picked.push_back(s);
  }
  if (picked.size() < need) {
    // Small or sparse pools: finish by sampling from the explicit remainder.
    std::vector<FontStyle> rest;
    for (std::size_t i = 0; i < styles; ++i) {
      const FontStyle s = vocab.style_at(i);
      if (eligible(s) && !seen.count(s)) rest.push_back(s);
    }
    if (rest.size() < need - picked.size()) {
      std::ostringstream os;
      os << "vocabulary n" << vocab.neediness_level << " has too few distractor "
         << "styles for " << o.to_string();
      throw Error(ErrorCode::kInfeasible, os.str());
    }
    seeded_shuffle(rest, rng);
    rest.resize(need - picked.size());
    picked.insert(picked.end(), rest.begin(), rest.end());
  }

  Toolbar toolbar;
  for (const auto& s : picked) toolbar.icons.push_back(Icon{s});
  if (anchor_icon) {
    const std::size_t at = uniform_index(rng, toolbar.icons.size() + 1);
    toolbar.icons.insert(toolbar.icons.begin() + static_cast<std::ptrdiff_t>(at),
                         Icon{*anchor_icon});
  }
  return toolbar;
}

int simulate_manual_completion(const HighlightGoal& goal,
                               const std::optional<Icon>& accepted) {
  if (!accepted) return goal.complexity();
  return fix_distance(accepted->style, goal.target);
}

VocabularySet::VocabularySet()
    : by_level_{{0, Vocabulary::standard()}, {1, Vocabulary::needy()}} {}

VocabularySet::VocabularySet(std::map<int, Vocabulary> by_level)
    : by_level_(std::move(by_level)) {
  for (auto& [level, vocab] : by_level_) {
    vocab.neediness_level = level;
    vocab.validate();
  }
}

const Vocabulary& VocabularySet::at(int neediness) const {
  auto it = by_level_.find(neediness);
  if (it == by_level_.end()) {
    throw Error(ErrorCode::kInvalidConfig,
                "no vocabulary for neediness level " + std::to_string(neediness));
  }
  return it->second;
}

const std::vector<std::string>& task_sentences() {
  static const std::vector<std::string> sentences = {
      "The patient was admitted to the ward after midnight",
      "Quarterly revenue exceeded the forecast by a wide margin",
      "Photosynthesis converts light energy into chemical energy",
      "The committee approved the revised budget on Friday",
      "Every node forwards the message to its nearest neighbour",
      "A standard gamble compares a lottery with a sure outcome",
      "The bridge was closed for repairs during the storm",
      "Students must submit the final report before the deadline",
      "The enzyme accelerates the reaction without being consumed",
      "Our team migrated the database to the new cluster",
      "The orchestra rehearsed the symphony for three weeks",
      "Glaciers retreat when summer melting outpaces winter snowfall",
  };
  return sentences;
}

namespace {

std::size_t word_count(const std::string& sentence) {
  std::istringstream is(sentence);
  std::size_t n = 0;
  for (std::string w; is >> w;) ++n;
  return n;
}

}  // namespace

TaskSpec make_task(const Outcome& o, const VocabularySet& vocabularies,
                   int goal_complexity, std::uint64_t seed) {
  const Vocabulary& vocab = vocabularies.at(o.n);
  TaskSpec task;
  task.outcome = o;
  task.neediness = o.n;
  task.goal = generate_goal(vocab, goal_complexity, derive_seed(seed, {1}));
  task.toolbar = generate_toolbar(o, task.goal, vocab, derive_seed(seed, {2}));
  Rng rng(derive_seed(seed, {3}));
  const auto& sentences = task_sentences();
  task.sentence = sentences[uniform_index(rng, sentences.size())];
  const std::size_t words = word_count(task.sentence);
  const std::size_t span_len = 1 + uniform_index(rng, 2);
  task.span.begin = uniform_index(rng, words - span_len + 1);
  task.span.end = task.span.begin + span_len;
  return task;
}

}  // namespace expelicit
