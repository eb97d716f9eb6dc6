#pragma once

namespace storyflux {

// Regularized lower/upper incomplete gamma functions P(a, x) and Q(a, x).
// Series for x < a + 1, Lentz continued fraction otherwise; relative error
// is near machine precision for the ranges used by the chi-square tail.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi2_survival(double statistic, double dof);

}  // namespace storyflux
