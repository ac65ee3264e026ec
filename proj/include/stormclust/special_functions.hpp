#ifndef STORMCLUST_SPECIAL_FUNCTIONS_HPP
#define STORMCLUST_SPECIAL_FUNCTIONS_HPP

namespace stormclust::special {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed directly in the tail.
double gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b), a, b > 0, 0 <= x <= 1.
double beta_inc(double a, double b, double x);

/// Upper tail of the chi-squared distribution with `df` degrees of freedom.
double chi_squared_sf(double statistic, double df);

/// Upper tail of the F distribution with (df1, df2) degrees of freedom.
double f_sf(double f, double df1, double df2);

}  // namespace stormclust::special

#endif
