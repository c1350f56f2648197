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

namespace expelicit::dist {

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// Regularized incomplete beta I_x(a, b), evaluated with the Lentz continued
// fraction on whichever side of the mean converges fastest.
double incomplete_beta(double a, double b, double x);

// Student t with `df` degrees of freedom.
double t_cdf(double t, double df);
// P(|T| >= |t|).
double t_two_tailed_p(double t, double df);
// Inverse CDF for p in (0, 1).
double t_quantile(double p, double df);
// Critical |t| for a two-tailed test at level alpha.
double t_critical_two_tailed(double alpha, double df);

// Upper tail P(F >= f) for the F distribution with (d1, d2) degrees of freedom.
double f_survival(double f, double d1, double d2);

}  // namespace expelicit::dist
