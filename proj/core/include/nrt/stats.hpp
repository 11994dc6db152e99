#pragma once

namespace nrt {

// log Beta(a, b) via lgamma.
double log_beta(double a, double b);

// Regularized incomplete beta I_x(a, b), evaluated with the continued
// fraction (modified Lentz). Absolute accuracy around 1e-10 or better over
// the parameter ranges used by the t-distribution.
double regularized_incomplete_beta(double x, double a, double b);

// CDF of Student's t with dof degrees of freedom.
double student_t_cdf(double x, double dof);

}  // namespace nrt
