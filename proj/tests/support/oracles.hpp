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

// Independent reference implementations used by the tests. None of these
// call into the library routines they check.

#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "expelicit/decision_model.hpp"
#include "expelicit/outcome_space.hpp"
#include "expelicit/task_domain.hpp"

namespace oracle {

// Breadth-first search over the style graph of `vocab`, where one edge sets
// one feature to any other admissible value. Returns the number of edges
// from every style (indexed as Vocabulary::all_styles) to `to`.
std::map<expelicit::FontStyle, int> distances_to(const expelicit::FontStyle& to,
                                                 const expelicit::Vocabulary& vocab);

// Quality of an icon as events saved: distance(baseline, target) minus
// distance(icon, target), floored at zero, both from the search above.
int quality_by_search(const expelicit::FontStyle& icon, const expelicit::HighlightGoal& goal,
                      const std::map<expelicit::FontStyle, int>& dist);

// Cyclic Jacobi eigendecomposition of a symmetric matrix.
struct Eigensystem {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // columns
};
Eigensystem jacobi_eigen(const Eigen::MatrixXd& symmetric);

// T^2 with S^+ assembled from the Jacobi eigenpairs whose eigenvalue exceeds
// rtol times the largest one. Covariance built by explicit loops.
double hotelling_by_eigen(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double rtol);
// Rank of the pooled covariance under the same cutoff.
int pooled_rank_by_eigen(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double rtol);

// Pooled two-sample t for one column, by hand.
double pooled_t(const std::vector<double>& a, const std::vector<double>& b);

// Grid utility table for the decision oracle: value[n][l][q].
struct GridUtility {
  std::vector<int> levels;
  std::vector<int> lengths;
  std::vector<int> qualities;
  std::map<int, std::map<int, std::map<int, double>>> value;

  double at(int n, int l, int q) const;  // bilinear, q first then l
};

int hamming_quality(const expelicit::Toolbar& t, const expelicit::HighlightGoal& g);

// Exhaustive argmax over {no suggestion} + candidates with the same tie
// order as the engine: no suggestion, then shorter, then smaller icon list.
std::optional<std::size_t> exhaustive_choice(const std::vector<expelicit::Toolbar>& candidates,
                                             const std::vector<expelicit::HighlightGoal>& goals,
                                             const std::vector<double>& belief,
                                             const GridUtility& u, int n, double none);

// Random decision problem over the default outcome grid. Utilities and the
// no-suggestion value are multiples of 0.05 and candidates may repeat, so
// exact ties occur regularly.
struct DecisionInstance {
  std::vector<expelicit::HighlightGoal> goals;
  std::vector<double> belief;
  std::vector<expelicit::Toolbar> candidates;
  std::vector<double> values;  // per outcome, enumeration order
  double none = 0.0;
  int neediness = 0;
};
DecisionInstance random_decision_instance(std::uint64_t seed, int max_goals, int max_candidates);

}  // namespace oracle
