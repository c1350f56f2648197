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

#include "expelicit/outcome_space.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>

#include "expelicit/error.hpp"

namespace expelicit {

Probability::Probability(int ticks, int divisions)
    : ticks_(ticks), divisions_(divisions) {
  if (divisions <= 0 || ticks < 0 || ticks > divisions) {
    throw Error(ErrorCode::kInvalidProbability,
                std::to_string(ticks) + "/" + std::to_string(divisions) +
                    " is not in [0, 1]");
  }
}

Probability Probability::from_double(double value, int divisions) {
  const double scaled = value * divisions;
  const double rounded = std::round(scaled);
  if (!std::isfinite(value) || std::abs(scaled - rounded) > 1e-9 * divisions ||
      rounded < 0 || rounded > divisions) {
    std::ostringstream os;
    os << value << " is not on the 1/" << divisions << " probability grid";
    throw Error(ErrorCode::kInvalidProbability, os.str());
  }
  return {static_cast<int>(rounded), divisions};
}

std::string Probability::to_string() const {
  std::ostringstream os;
  os << value();
  return os.str();
}

int AttributeGrid::divisions_for_step(double step) {
  if (!(step > 0.0) || step > 1.0) {
    throw Error(ErrorCode::kInvalidGrid, "probability step must lie in (0, 1]");
  }
  const double inverse = 1.0 / step;
  const double rounded = std::round(inverse);
  if (std::abs(inverse - rounded) > 1e-9 * inverse || rounded > 1e6) {
    std::ostringstream os;
    os << "probability step " << step << " does not divide 1";
    throw Error(ErrorCode::kInvalidGrid, os.str());
  }
  return static_cast<int>(rounded);
}

namespace {

void check_levels(const std::vector<int>& levels, const char* name) {
  if (levels.empty()) {
    throw Error(ErrorCode::kInvalidGrid, std::string(name) + " must be nonempty");
  }
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i] <= levels[i - 1]) {
      throw Error(ErrorCode::kInvalidGrid,
                  std::string(name) + " must be strictly increasing");
    }
  }
}

}  // namespace

void AttributeGrid::validate(int max_quality) const {
  check_levels(neediness_levels, "neediness_levels");
  check_levels(lengths, "lengths");
  check_levels(qualities, "qualities");
  if (lengths.front() < 1) {
    throw Error(ErrorCode::kInvalidGrid, "lengths must be at least 1 icon");
  }
  if (qualities.front() < 0 || qualities.back() > max_quality) {
    throw Error(ErrorCode::kInvalidGrid,
                "qualities must lie in [0, " + std::to_string(max_quality) + "]");
  }
  if (neediness_levels.front() < 0) {
    throw Error(ErrorCode::kInvalidGrid, "neediness levels must be nonnegative");
  }
  if (divisions < 1) {
    throw Error(ErrorCode::kInvalidGrid, "probability step does not divide 1");
  }
}

std::string Outcome::to_string() const {
  return "n" + std::to_string(n) + ",l" + std::to_string(l) + ",q" +
         std::to_string(q);
}

Outcome Outcome::parse(const std::string& text) {
  static const std::regex pattern(
      R"(\s*\(?\s*n(\d+)\s*,\s*l(\d+)\s*,\s*q(\d+)\s*\)?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw Error(ErrorCode::kUnknownOutcome, "cannot parse outcome '" + text + "'");
  }
  return {std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3])};
}

std::string_view to_string(OutcomeRole role) {
  switch (role) {
    case OutcomeRole::kBest: return "best";
    case OutcomeRole::kWorst: return "worst";
    case OutcomeRole::kInterior: return "interior";
  }
  return "interior";
}

OutcomeSpace::OutcomeSpace()
    : OutcomeSpace(AttributeGrid{}, Outcome{0, 1, 4}, Outcome{1, 10, 0}) {}

OutcomeSpace::OutcomeSpace(AttributeGrid grid, Outcome best, Outcome worst,
                           int max_quality)
    : grid_(std::move(grid)), best_(best), worst_(worst) {
  grid_.validate(max_quality);
  for (int n : grid_.neediness_levels) {
    for (int l : grid_.lengths) {
      for (int q : grid_.qualities) outcomes_.push_back({n, l, q});
    }
  }
  if (!contains(best_)) {
    throw Error(ErrorCode::kInvalidGrid, "best outcome " + best_.to_string() +
                                             " is not a grid member");
  }
  if (!contains(worst_)) {
    throw Error(ErrorCode::kInvalidGrid, "worst outcome " + worst_.to_string() +
                                             " is not a grid member");
  }
  if (best_ == worst_) {
    throw Error(ErrorCode::kInvalidGrid, "best and worst outcomes coincide");
  }
}

bool OutcomeSpace::contains(const Outcome& o) const noexcept {
  return std::binary_search(outcomes_.begin(), outcomes_.end(), o);
}

std::size_t OutcomeSpace::index_of(const Outcome& o) const {
  auto it = std::lower_bound(outcomes_.begin(), outcomes_.end(), o);
  if (it == outcomes_.end() || *it != o) {
    throw Error(ErrorCode::kUnknownOutcome, o.to_string() + " is not in the grid");
  }
  return static_cast<std::size_t>(it - outcomes_.begin());
}

std::vector<Probability> OutcomeSpace::probability_grid() const {
  std::vector<Probability> out;
  out.reserve(static_cast<std::size_t>(grid_.divisions) + 1);
  for (int t = 0; t <= grid_.divisions; ++t) out.emplace_back(t, grid_.divisions);
  return out;
}

OutcomeRole OutcomeSpace::classify(const Outcome& o) const {
  if (!contains(o)) {
    throw Error(ErrorCode::kUnknownOutcome, o.to_string() + " is not in the grid");
  }
  if (o == best_) return OutcomeRole::kBest;
  if (o == worst_) return OutcomeRole::kWorst;
  return OutcomeRole::kInterior;
}

std::vector<Outcome> OutcomeSpace::interior() const {
  std::vector<Outcome> out;
  for (const auto& o : outcomes_) {
    if (o != best_ && o != worst_) out.push_back(o);
  }
  return out;
}

}  // namespace expelicit
