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

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace expelicit {

// A probability on a fixed grid, stored as `ticks / divisions` so that grid
// membership, midpoints and widths are exact integer arithmetic.
class Probability {
 public:
  constexpr Probability() = default;
  Probability(int ticks, int divisions);

  static Probability zero(int divisions) { return {0, divisions}; }
  static Probability one(int divisions) { return {divisions, divisions}; }

  // Snaps `value` onto the grid. Throws kInvalidProbability when `value` is
  // not within 1e-9 of a grid point.
  static Probability from_double(double value, int divisions);

  constexpr int ticks() const noexcept { return ticks_; }
  constexpr int divisions() const noexcept { return divisions_; }
  double value() const noexcept {
    return static_cast<double>(ticks_) / static_cast<double>(divisions_);
  }

  friend bool operator==(const Probability& a, const Probability& b) noexcept {
    return static_cast<long long>(a.ticks_) * b.divisions_ ==
           static_cast<long long>(b.ticks_) * a.divisions_;
  }
  friend std::strong_ordering operator<=>(const Probability& a,
                                          const Probability& b) noexcept {
    return static_cast<long long>(a.ticks_) * b.divisions_ <=>
           static_cast<long long>(b.ticks_) * a.divisions_;
  }

  std::string to_string() const;

 private:
  int ticks_ = 0;
  int divisions_ = 1;
};

// Discretized attribute grid. Neediness levels, toolbar lengths (icons) and
// toolbar qualities (actions saved); `divisions` is 1 / probability step.
struct AttributeGrid {
  std::vector<int> neediness_levels{0, 1};
  std::vector<int> lengths{1, 5, 10};
  std::vector<int> qualities{0, 2, 4};
  int divisions = 10;

  double probability_step() const { return 1.0 / divisions; }

  // Converts a decimal step such as 0.1 into a division count. Throws
  // kInvalidGrid when the step does not divide 1 exactly.
  static int divisions_for_step(double step);

  // Throws kInvalidGrid describing the first violated invariant.
  void validate(int max_quality) const;
};

struct Outcome {
  int n = 0;
  int l = 0;
  int q = 0;

  friend auto operator<=>(const Outcome&, const Outcome&) = default;

  // "n0,l1,q4"
  std::string to_string() const;
  // Accepts "n0,l1,q4" (whitespace tolerant). Throws kUnknownOutcome.
  static Outcome parse(const std::string& text);
};

enum class OutcomeRole { kBest, kWorst, kInterior };

std::string_view to_string(OutcomeRole role);

class OutcomeSpace {
 public:
  // Defaults reproduce the 18-outcome study grid with o_best = (n0,l1,q4) and
  // o_worst = (n1,l10,q0).
  OutcomeSpace();
  OutcomeSpace(AttributeGrid grid, Outcome best, Outcome worst,
               int max_quality = 7);

  const AttributeGrid& grid() const noexcept { return grid_; }
  const Outcome& best() const noexcept { return best_; }
  const Outcome& worst() const noexcept { return worst_; }
  int divisions() const noexcept { return grid_.divisions; }

  // Lexicographic (n, l, q) order.
  const std::vector<Outcome>& enumerate() const noexcept { return outcomes_; }
  std::size_t size() const noexcept { return outcomes_.size(); }

  bool contains(const Outcome& o) const noexcept;
  // Position in enumerate(); throws kUnknownOutcome.
  std::size_t index_of(const Outcome& o) const;

  // [0, step, ..., 1] inclusive.
  std::vector<Probability> probability_grid() const;

  OutcomeRole classify(const Outcome& o) const;
  bool is_anchor(const Outcome& o) const { return classify(o) != OutcomeRole::kInterior; }

  // Outcomes other than the two anchors, in enumeration order.
  std::vector<Outcome> interior() const;

  friend bool operator==(const OutcomeSpace& a, const OutcomeSpace& b) {
    return a.grid_.neediness_levels == b.grid_.neediness_levels &&
           a.grid_.lengths == b.grid_.lengths &&
           a.grid_.qualities == b.grid_.qualities &&
           a.grid_.divisions == b.grid_.divisions && a.best_ == b.best_ &&
           a.worst_ == b.worst_;
  }

 private:
  AttributeGrid grid_;
  Outcome best_;
  Outcome worst_;
  std::vector<Outcome> outcomes_;
};

}  // namespace expelicit
