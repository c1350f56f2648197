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

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "expelicit/distributions.hpp"

namespace expelicit::dist {
namespace {

TEST(Distributions, LogGammaAgainstBoost) {
  for (double x : {0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 55.5, 171.0}) {
    EXPECT_NEAR(log_gamma(x), boost::math::lgamma(x), 1e-10 * std::max(1.0, std::abs(boost::math::lgamma(x))))
        << x;
  }
}

TEST(Distributions, IncompleteBetaAgainstBoost) {
  for (double a : {0.5, 1.0, 2.0, 8.0, 9.5, 40.0}) {
    for (double b : {0.5, 1.0, 2.0, 3.0, 19.0}) {
      for (double x : {0.0, 1e-6, 0.01, 0.2, 0.5, 0.73, 0.99, 1.0}) {
        EXPECT_NEAR(incomplete_beta(a, b, x), boost::math::ibeta(a, b, x), 1e-10)
            << a << " " << b << " " << x;
      }
    }
  }
}

TEST(Distributions, IncompleteBetaSymmetry) {
  for (double x : {0.1, 0.3, 0.6, 0.9}) {
    EXPECT_NEAR(incomplete_beta(2.5, 4.0, x), 1.0 - incomplete_beta(4.0, 2.5, 1.0 - x), 1e-12);
  }
}

TEST(Distributions, TAgainstBoost) {
  for (double df : {1.0, 2.0, 4.0, 19.0, 30.0, 200.0}) {
    const boost::math::students_t d(df);
    for (double t : {-6.0, -2.0, -0.5, 0.0, 0.3, 1.7, 4.0}) {
      EXPECT_NEAR(t_cdf(t, df), boost::math::cdf(d, t), 1e-10) << df << " " << t;
      EXPECT_NEAR(t_two_tailed_p(t, df), 2.0 * boost::math::cdf(boost::math::complement(d, std::abs(t))),
                  1e-10);
    }
    for (double p : {0.001, 0.025, 0.3, 0.5, 0.9, 0.975}) {
      EXPECT_NEAR(t_quantile(p, df), boost::math::quantile(d, p),
                  1e-8 * std::max(1.0, std::abs(boost::math::quantile(d, p))))
          << df << " " << p;
    }
  }
}

TEST(Distributions, CriticalValueAtNineteen) {
  EXPECT_NEAR(t_critical_two_tailed(0.05, 19.0), 2.093, 5e-4);
}

TEST(Distributions, FAgainstBoost) {
  for (auto [d1, d2] : {std::pair{1.0, 1.0}, {2.0, 5.0}, {16.0, 4.0}, {3.0, 40.0}, {10.0, 10.0}}) {
    const boost::math::fisher_f d(d1, d2);
    for (double f : {0.0, 0.1, 0.9, 1.0, 2.5, 6.0, 50.0}) {
      EXPECT_NEAR(f_survival(f, d1, d2), boost::math::cdf(boost::math::complement(d, f)), 1e-10)
          << d1 << " " << d2 << " " << f;
    }
  }
}

TEST(Distributions, FOfTSquaredIsTwoTailedT) {
  for (double t : {0.4, 1.3, 2.2}) {
    EXPECT_NEAR(f_survival(t * t, 1.0, 19.0), t_two_tailed_p(t, 19.0), 1e-12);
  }
}

}  // namespace
}  // namespace expelicit::dist
