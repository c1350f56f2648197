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

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "expelicit/outcome_space.hpp"

namespace expelicit {

// One row per respondent, one column per outcome in enumeration order;
// entries are midpoint utilities.
struct SampleMatrix {
  std::vector<Outcome> columns;
  std::vector<std::string> row_labels;
  Eigen::MatrixXd values;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }

  // Throws kInvalidSample on shape mismatch or entries outside [0, 1].
  void validate() const;
  // Copy restricted to the given column positions.
  SampleMatrix select_columns(const std::vector<Eigen::Index>& idx) const;
};

// Default relative cutoff for singular values: 1e-10 * max(rows, cols).
double default_pinv_rtol(const Eigen::MatrixXd& m);

// Moore-Penrose pseudoinverse via SVD; singular values below
// rtol * sigma_max are treated as zero.
Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& m, std::optional<double> rtol = std::nullopt);

// Number of singular values above rtol * sigma_max.
Eigen::Index numerical_rank(const Eigen::MatrixXd& m, std::optional<double> rtol = std::nullopt);

struct TestResult {
  std::string test;  // "pooled-t" or "hotelling-t2"
  std::vector<Outcome> columns;

  // Per-outcome battery (pooled two-sample t).
  std::vector<double> t;
  std::vector<double> t_p_values;
  double df = 0.0;  // n_A + n_B - 2

  // Multivariate statistic.
  double statistic = 0.0;
  std::optional<double> p_value;
  double f_statistic = 0.0;
  double f_df1 = 0.0;
  double f_df2 = 0.0;
  Eigen::Index effective_dimension = 0;
  std::string p_method;
  std::vector<std::string> warnings;
};

// Pooled-variance two-sample t per column; positive t means A's mean is
// larger. Zero pooled variance yields +/-inf when the means differ, else 0.
TestResult t_test_per_outcome(const SampleMatrix& a, const SampleMatrix& b);

// T^2 = (n_A n_B / (n_A + n_B)) d' S^+ d with S the pooled covariance. The p
// value uses F = ((n - r - 1) / (r (n - 2))) T^2 on (r, n - r - 1) degrees of
// freedom, r = rank(S); it is left empty when n - r - 1 <= 0.
TestResult hotelling_t2(const SampleMatrix& a, const SampleMatrix& b);

struct SignificanceRow {
  Outcome outcome;
  double t = 0.0;
  double p_value = 1.0;
  bool significant = false;
};

struct SignificanceTable {
  double alpha = 0.05;
  double df = 0.0;
  double critical = 0.0;
  std::vector<SignificanceRow> rows;
  double mean_t = 0.0;  // over finite entries
  std::size_t flagged = 0;
};

// Flags every outcome whose |t| exceeds the two-tailed critical value.
SignificanceTable summarize(const TestResult& result, double alpha = 0.05);

}  // namespace expelicit
