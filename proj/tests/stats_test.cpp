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


#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "expelicit/error.hpp"
#include "expelicit/stats.hpp"
#include "support/oracles.hpp"

namespace expelicit {
namespace {

Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols, int rank) {
  std::normal_distribution<double> z;
  Eigen::MatrixXd l(rows, rank);
  Eigen::MatrixXd r(rank, cols);
  for (int i = 0; i < l.size(); ++i) l.data()[i] = z(rng);
  for (int i = 0; i < r.size(); ++i) r.data()[i] = z(rng);
  return l * r;
}

SampleMatrix sample(const Eigen::MatrixXd& v) {
  SampleMatrix m;
  for (Eigen::Index j = 0; j < v.cols(); ++j) m.columns.push_back({0, 1, static_cast<int>(j)});
  for (Eigen::Index i = 0; i < v.rows(); ++i) m.row_labels.push_back("r" + std::to_string(i));
  m.values = v;
  return m;
}

TEST(Pseudoinverse, Examples) {
  EXPECT_TRUE(pseudoinverse(Eigen::MatrixXd::Identity(3, 3)).isApprox(Eigen::MatrixXd::Identity(3, 3)));
  Eigen::MatrixXd d(2, 2);
  d << 2, 0, 0, 0;
  Eigen::MatrixXd want(2, 2);
  want << 0.5, 0, 0, 0;
  EXPECT_TRUE(pseudoinverse(d).isApprox(want));
  EXPECT_EQ(numerical_rank(d), 1);
  EXPECT_TRUE(pseudoinverse(Eigen::MatrixXd::Zero(2, 3)).isZero());
}

TEST(Pseudoinverse, PenroseConditions) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 20);
    const int cols = 1 + static_cast<int>(rng() % 20);
    const int rank = 1 + static_cast<int>(rng() % std::min(rows, cols));
    const Eigen::MatrixXd a = random_matrix(rng, rows, cols, rank);
    const Eigen::MatrixXd x = pseudoinverse(a);
    ASSERT_EQ(x.rows(), cols);
    ASSERT_EQ(x.cols(), rows);
    const double tol = 1e-8 * std::max(1.0, a.norm() * x.norm());
    EXPECT_LE((a * x * a - a).norm(), tol * a.norm());
    EXPECT_LE((x * a * x - x).norm(), tol * x.norm());
    EXPECT_LE(((a * x).transpose() - a * x).norm(), tol);
    EXPECT_LE(((x * a).transpose() - x * a).norm(), tol);
    EXPECT_EQ(numerical_rank(a), rank);
  }
}

TEST(TTest, Example) {
  Eigen::MatrixXd a(2, 1);
  a << 0.2, 0.4;
  Eigen::MatrixXd b(2, 1);
  b << 0.6, 0.8;
  const TestResult r = t_test_per_outcome(sample(a), sample(b));
  ASSERT_EQ(r.t.size(), 1u);
  EXPECT_NEAR(r.t[0], -2.8284, 1e-4);
  EXPECT_DOUBLE_EQ(r.df, 2.0);
}

TEST(TTest, AgainstHandComputation) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u;
  Eigen::MatrixXd a(13, 5);
  Eigen::MatrixXd b(8, 5);
  for (int i = 0; i < a.size(); ++i) a.data()[i] = u(rng);
  for (int i = 0; i < b.size(); ++i) b.data()[i] = u(rng);
  const TestResult r = t_test_per_outcome(sample(a), sample(b));
  for (int j = 0; j < 5; ++j) {
    std::vector<double> ca(a.col(j).data(), a.col(j).data() + a.rows());
    std::vector<double> cb(b.col(j).data(), b.col(j).data() + b.rows());
    EXPECT_NEAR(r.t[static_cast<std::size_t>(j)], oracle::pooled_t(ca, cb), 1e-12);
  }
}

TEST(TTest, ConstantColumns) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Constant(3, 2, 0.5);
  Eigen::MatrixXd b = Eigen::MatrixXd::Constant(4, 2, 0.5);
  b(0, 1) = b(1, 1) = b(2, 1) = b(3, 1) = 0.2;
  const TestResult r = t_test_per_outcome(sample(a), sample(b));
  EXPECT_EQ(r.t[0], 0.0);
  EXPECT_TRUE(std::isinf(r.t[1]) && r.t[1] > 0);
}

TEST(Hotelling, SingleColumnIsTSquared) {
  Eigen::MatrixXd a(5, 1);
  a << 0.1, 0.4, 0.35, 0.2, 0.6;
  Eigen::MatrixXd b(6, 1);
  b << 0.7, 0.5, 0.9, 0.55, 0.65, 0.8;
  const TestResult t = t_test_per_outcome(sample(a), sample(b));
  const TestResult h = hotelling_t2(sample(a), sample(b));
  EXPECT_NEAR(h.statistic, t.t[0] * t.t[0], 1e-10);
  EXPECT_EQ(h.effective_dimension, 1);
  ASSERT_TRUE(h.p_value);
  EXPECT_NEAR(*h.p_value, t.t_p_values[0], 1e-10);
}

TEST(Hotelling, AgreesWithEigenOracleOnStudyShapes) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd a(13, 18);
    Eigen::MatrixXd b(8, 18);
    for (int i = 0; i < a.size(); ++i) a.data()[i] = 0.05 * std::round(20.0 * u(rng));
    for (int i = 0; i < b.size(); ++i) b.data()[i] = 0.05 * std::round(20.0 * u(rng));
    // Anchor columns are constant.
    a.col(4).setOnes();
    b.col(4).setOnes();
    a.col(15).setZero();
    b.col(15).setZero();
    const TestResult h = hotelling_t2(sample(a), sample(b));
    const double want = oracle::hotelling_by_eigen(a, b, 1e-9);
    EXPECT_NEAR(h.statistic, want, 1e-6 * std::max(1.0, want));
    EXPECT_EQ(h.effective_dimension, oracle::pooled_rank_by_eigen(a, b, 1e-9));
    EXPECT_EQ(h.effective_dimension, 16);
    EXPECT_DOUBLE_EQ(h.f_df1, 16.0);
    EXPECT_DOUBLE_EQ(h.f_df2, 4.0);
    ASSERT_TRUE(h.p_value);
    EXPECT_GE(*h.p_value, 0.0);
    EXPECT_LE(*h.p_value, 1.0);
  }
}

TEST(Hotelling, DimensionCapsAtPooledDegreesOfFreedom) {
  // More columns than rows: rank(S) <= n - 2, so the F test keeps one
  // denominator degree of freedom.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u;
  Eigen::MatrixXd a(4, 10);
  Eigen::MatrixXd b(4, 10);
  for (int i = 0; i < a.size(); ++i) a.data()[i] = u(rng);
  for (int i = 0; i < b.size(); ++i) b.data()[i] = u(rng);
  const TestResult h = hotelling_t2(sample(a), sample(b));
  EXPECT_EQ(h.effective_dimension, 6);
  EXPECT_DOUBLE_EQ(h.f_df1, 6.0);
  EXPECT_DOUBLE_EQ(h.f_df2, 1.0);
  ASSERT_TRUE(h.p_value);
  EXPECT_NEAR(h.statistic, oracle::hotelling_by_eigen(a, b, 1e-9), 1e-6 * std::max(1.0, h.statistic));
}

TEST(Hotelling, IdenticalSamplesGiveZero) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u;
  Eigen::MatrixXd a(10, 4);
  for (int i = 0; i < a.size(); ++i) a.data()[i] = u(rng);
  const TestResult h = hotelling_t2(sample(a), sample(a));
  EXPECT_NEAR(h.statistic, 0.0, 1e-12);
  ASSERT_TRUE(h.p_value);
  EXPECT_NEAR(*h.p_value, 1.0, 1e-12);
}

TEST(Samples, ValidateRejectsBadShapes) {
  SampleMatrix m = sample(Eigen::MatrixXd::Constant(2, 2, 0.5));
  EXPECT_NO_THROW(m.validate());
  m.values(0, 0) = 1.5;
  EXPECT_THROW(m.validate(), Error);
  m = sample(Eigen::MatrixXd::Constant(2, 2, 0.5));
  m.columns.pop_back();
  EXPECT_THROW(m.validate(), Error);
}

TEST(Summarize, FlagsBeyondCritical) {
  TestResult r;
  r.columns = {{0, 1, 0}, {0, 1, 2}, {0, 1, 4}};
  r.t = {2.5, -2.0, -2.2};
  r.t_p_values = {0.02, 0.06, 0.04};
  r.df = 19.0;
  const SignificanceTable s = summarize(r);
  EXPECT_NEAR(s.critical, 2.093, 5e-4);
  ASSERT_EQ(s.rows.size(), 3u);
  EXPECT_TRUE(s.rows[0].significant);
  EXPECT_FALSE(s.rows[1].significant);
  EXPECT_TRUE(s.rows[2].significant);
  EXPECT_EQ(s.flagged, 2u);
  EXPECT_NEAR(s.mean_t, (2.5 - 2.0 - 2.2) / 3.0, 1e-12);
}

TEST(Summarize, MeanSkipsInfinities) {
  TestResult r;
  r.columns = {{0, 1, 0}, {0, 1, 2}};
  r.t = {1.0, INFINITY};
  r.t_p_values = {0.3, 0.0};
  r.df = 10.0;
  const SignificanceTable s = summarize(r, 0.01);
  EXPECT_DOUBLE_EQ(s.mean_t, 1.0);
  EXPECT_EQ(s.flagged, 1u);
}

}  // namespace
}  // namespace expelicit
