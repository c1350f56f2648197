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

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expelicit/outcome_space.hpp"

namespace expelicit {

// Font features of a highlighting style. The first five are binary; color
// and font family index into the active vocabulary.
enum class Feature {
  kBold,
  kUnderline,
  kItalics,
  kShadow,
  kSizeIncrement,
  kColor,
  kFontFamily,
};

inline constexpr int kFeatureCount = 7;
inline constexpr std::array<Feature, kFeatureCount> kAllFeatures = {
    Feature::kBold,   Feature::kUnderline,     Feature::kItalics,
    Feature::kShadow, Feature::kSizeIncrement, Feature::kColor,
    Feature::kFontFamily};

std::string_view to_string(Feature feature);
// Throws kInvalidConfig for unknown names.
Feature parse_feature(std::string_view name);

struct FontStyle {
  bool bold = false;
  bool underline = false;
  bool italics = false;
  bool shadow = false;
  bool size_increment = false;
  int color = 0;
  int font_family = 0;

  int get(Feature feature) const;
  void set(Feature feature, int value);

  friend auto operator<=>(const FontStyle&, const FontStyle&) = default;
};

// Colors and font families available to styles in one task environment.
// Index 0 of each list is the plain body-text value used by the baseline.
struct Vocabulary {
  std::vector<std::string> colors;
  std::vector<std::string> fonts;
  int neediness_level = 0;

  // 8 colors, 10 font families.
  static Vocabulary standard();
  // 7 shades of red, 4 similar font families.
  static Vocabulary needy();

  int value_count(Feature feature) const;
  bool admits(const FontStyle& style) const;
  FontStyle baseline() const { return FontStyle{}; }
  std::size_t style_count() const;
  // Every admissible style, ordered by the mixed-radix index over features.
  std::vector<FontStyle> all_styles() const;
  FontStyle style_at(std::size_t index) const;

  void validate() const;
};

struct HighlightGoal {
  FontStyle target;
  FontStyle baseline;

  int complexity() const;
};

struct Icon {
  FontStyle style;
  friend auto operator<=>(const Icon&, const Icon&) = default;
};

struct Toolbar {
  std::vector<Icon> icons;

  std::size_t length() const noexcept { return icons.size(); }
};

struct WordSpan {
  std::size_t begin = 0;  // first highlighted word
  std::size_t end = 0;    // one past the last highlighted word
};

// One highlighting task: the sentence is shown twice, once with the target
// style applied to `span` and once plain for the user to edit.
struct TaskSpec {
  std::string sentence;
  WordSpan span;
  HighlightGoal goal;
  std::optional<Toolbar> toolbar;
  int neediness = 0;
  Outcome outcome;
};

// Number of features whose value differs from the baseline.
int complexity(const FontStyle& style, const FontStyle& baseline);

// Minimum number of single-feature events turning `from` into `to`.
int fix_distance(const FontStyle& from, const FontStyle& to);

// Actions saved by accepting `icon`: complexity of the goal minus the
// residual events (missing goal features plus wrongly set features), floored
// at zero.
int quality_icon(const Icon& icon, const HighlightGoal& goal);

// Best quality over the toolbar's icons. Throws kInvalidToolbar when empty.
int quality_toolbar(const Toolbar& toolbar, const HighlightGoal& goal);

// Goal differing from the vocabulary baseline in exactly `complexity`
// features. Throws kInfeasible when the vocabulary cannot support it.
HighlightGoal generate_goal(const Vocabulary& vocab, int complexity,
                            std::uint64_t seed);

// Toolbar with exactly `o.l` icons, one of which attains quality `o.q` while
// the others are strictly worse (all zero when `o.q` is zero).
Toolbar generate_toolbar(const Outcome& o, const HighlightGoal& goal,
                         const Vocabulary& vocab, std::uint64_t seed);

// Residual events after optionally accepting an icon.
int simulate_manual_completion(const HighlightGoal& goal,
                               const std::optional<Icon>& accepted);

// Vocabularies keyed by neediness level.
class VocabularySet {
 public:
  VocabularySet();  // standard at n0, needy at n1
  explicit VocabularySet(std::map<int, Vocabulary> by_level);

  const Vocabulary& at(int neediness) const;
  const std::map<int, Vocabulary>& levels() const noexcept { return by_level_; }

 private:
  std::map<int, Vocabulary> by_level_;
};

const std::vector<std::string>& task_sentences();

// Builds a complete task at outcome `o`: fresh goal, toolbar, sentence and
// span, all drawn from `seed`.
TaskSpec make_task(const Outcome& o, const VocabularySet& vocabularies,
                   int goal_complexity, std::uint64_t seed);

}  // namespace expelicit
