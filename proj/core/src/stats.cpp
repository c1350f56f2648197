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

#include "expelicit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "expelicit/distributions.hpp"
#include "expelicit/error.hpp"

namespace expelicit {

void SampleMatrix::validate() const {
  if (values.cols() != static_cast<Eigen::Index>(columns.size())) {
    throw Error(ErrorCode::kInvalidSample, "column labels do not match the matrix");
  }
  if (!row_labels.empty() && values.rows() != static_cast<Eigen::Index>(row_labels.size())) {
    throw Error(ErrorCode::kInvalidSample, "row labels do not match the matrix");
  }
  if (!values.allFinite() || (values.size() > 0 &&
                              (values.minCoeff() < 0.0 || values.maxCoeff() > 1.0))) {
    throw Error(ErrorCode::kInvalidSample, "utilities must lie in [0, 1]");
  }
}

SampleMatrix SampleMatrix::select_columns(const std::vector<Eigen::Index>& idx) const {
  SampleMatrix out;
  out.row_labels = row_labels;
  out.values.resize(values.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    out.columns.push_back(columns[static_cast<std::size_t>(idx[j])]);
    out.values.col(static_cast<Eigen::Index>(j)) = values.col(idx[j]);
  }
  return out;
}

double default_pinv_rtol(const Eigen::MatrixXd& m) {
  return 1e-10 * static_cast<double>(std::max<Eigen::Index>({m.rows(), m.cols(), 1}));
}

Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& m, std::optional<double> rtol) {
  if (m.size() == 0) return Eigen::MatrixXd(m.cols(), m.rows());
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double cutoff = rtol.value_or(default_pinv_rtol(m)) * sigma(0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) inv(i) = 1.0 / sigma(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Eigen::Index numerical_rank(const Eigen::MatrixXd& m, std::optional<double> rtol) {
  if (m.size() == 0) return 0;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sigma = svd.singularValues();
  const double cutoff = rtol.value_or(default_pinv_rtol(m)) * sigma(0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) r += sigma(i) > cutoff;
  return r;
}

namespace {

void check_pair(const SampleMatrix& a, const SampleMatrix& b) {
  a.validate();
  b.validate();
  if (a.columns != b.columns) {
    throw Error(ErrorCode::kIncompatibleStudy, "groups were elicited over different outcomes");
  }
  if (a.rows() < 2 || b.rows() < 2) {
    throw Error(ErrorCode::kInvalidSample, "each group needs at least two respondents");
  }
}

Eigen::MatrixXd centered(const Eigen::MatrixXd& m) {
  return m.rowwise() - m.colwise().mean();
}

}  // namespace

TestResult t_test_per_outcome(const SampleMatrix& a, const SampleMatrix& b) {
  check_pair(a, b);
  const double na = static_cast<double>(a.rows());
  const double nb = static_cast<double>(b.rows());
  TestResult r;
  r.test = "pooled-t";
  r.columns = a.columns;
  r.df = na + nb - 2.0;
  const Eigen::RowVectorXd mean_a = a.values.colwise().mean();
  const Eigen::RowVectorXd mean_b = b.values.colwise().mean();
  const Eigen::RowVectorXd ss =
      centered(a.values).colwise().squaredNorm() + centered(b.values).colwise().squaredNorm();
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const double diff = mean_a(j) - mean_b(j);
    const double pooled = ss(j) / r.df;
    const double scale = std::max({1.0, std::abs(mean_a(j)), std::abs(mean_b(j))});
    double t;
    if (pooled <= std::pow(1e-12 * scale, 2)) {
      if (std::abs(diff) <= 1e-12 * scale) {
        t = 0.0;
      } else {
        t = diff > 0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
        r.warnings.push_back("zero pooled variance at " + a.columns[static_cast<std::size_t>(j)].to_string());
      }
    } else {
      t = diff / std::sqrt(pooled * (1.0 / na + 1.0 / nb));
    }
    r.t.push_back(t);
    r.t_p_values.push_back(dist::t_two_tailed_p(t, r.df));
  }
  return r;
}

TestResult hotelling_t2(const SampleMatrix& a, const SampleMatrix& b) {
  check_pair(a, b);
  const double na = static_cast<double>(a.rows());
  const double nb = static_cast<double>(b.rows());
  const double n = na + nb;

  TestResult r = t_test_per_outcome(a, b);
  r.test = "hotelling-t2";
  r.warnings.clear();

  const Eigen::VectorXd delta =
      (a.values.colwise().mean() - b.values.colwise().mean()).transpose();
  const Eigen::MatrixXd ca = centered(a.values);
  const Eigen::MatrixXd cb = centered(b.values);
  const Eigen::MatrixXd pooled = (ca.transpose() * ca + cb.transpose() * cb) / (n - 2.0);

  const Eigen::MatrixXd pinv = pseudoinverse(pooled);
  r.statistic = (na * nb / n) * delta.dot(pinv * delta);
  if (std::abs(r.statistic) < 1e-300) r.statistic = 0.0;
  r.effective_dimension = numerical_rank(pooled);
  const double d = static_cast<double>(r.effective_dimension);
  r.p_method = "F(r, n-r-1) with r = numerical rank of the pooled covariance";
  r.f_df1 = d;
  r.f_df2 = n - d - 1.0;
  if (r.effective_dimension == 0) {
    r.f_statistic = 0.0;
    r.p_value = 1.0;
    r.warnings.push_back("pooled covariance is zero; statistic is trivially 0");
  } else if (r.f_df2 <= 0.0) {
    r.f_statistic = std::numeric_limits<double>::quiet_NaN();
    r.warnings.push_back("dimensionality: n - rank - 1 <= 0, p value undefined");
  } else {
    r.f_statistic = (r.f_df2 / (d * (n - 2.0))) * r.statistic;
    r.p_value = dist::f_survival(r.f_statistic, r.f_df1, r.f_df2);
  }
  return r;
}

SignificanceTable summarize(const TestResult& result, double alpha) {
  SignificanceTable table;
  table.alpha = alpha;
  table.df = result.df;
  table.critical = dist::t_critical_two_tailed(alpha, result.df);
  double sum = 0.0;
  std::size_t finite = 0;
  for (std::size_t j = 0; j < result.t.size(); ++j) {
    SignificanceRow row;
    row.outcome = result.columns[j];
    row.t = result.t[j];
    row.p_value = j < result.t_p_values.size() ? result.t_p_values[j]
                                               : dist::t_two_tailed_p(row.t, result.df);
    row.significant = std::abs(row.t) > table.critical;
    table.flagged += row.significant;
    if (std::isfinite(row.t)) {
      sum += row.t;
      ++finite;
    }
    table.rows.push_back(row);
  }
  table.mean_t = finite ? sum / static_cast<double>(finite) : 0.0;
  return table;
}

}  // namespace expelicit
