#pragma once

namespace frontier {

// Standard normal density.
double norm_pdf(double z);

// Standard normal CDF, accurate to better than 1e-15 absolute.
double norm_cdf(double z);

// log(Phi(z)), computed in log space so extreme negative z does not underflow.
double norm_log_cdf(double z);

// Inverse Mills ratio phi(z)/Phi(z), stable across the whole real line.
double mills_ratio(double z);

// Derivative of the Mills ratio: -z*m - m^2.
double mills_ratio_deriv(double z);

// log(Phi(hi) - Phi(lo)) for hi > lo, stable in both tails.
double norm_log_cdf_diff(double lo, double hi);

// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

// Two-sided p-value of a t statistic with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

// Two-sided p-value of a standard normal z statistic.
double normal_two_sided_p(double z);

} // namespace frontier
