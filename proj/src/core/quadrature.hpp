#pragma once

#include <functional>

namespace levylab::quad {

inline constexpr double kDefaultRelTol = 1e-8;

using Integrand = std::function<double(double)>;

/// Integral of f over the finite interval [a, b], adaptive Gauss-Kronrod.
double finite(const Integrand& f, double a, double b,
              double rel_tol = kDefaultRelTol);

/// Integral of f over [r, +inf), r > 0. Octave shells [r 2^k, r 2^{k+1}],
/// each integrated adaptively; the shell sums must decay geometrically.
/// Throws NumericalError when they do not (divergent tail).
double upper_tail(const Integrand& f, double r,
                  double rel_tol = kDefaultRelTol);

/// Integral of f over (0, r]. Shells toward the origin; an integrable
/// endpoint singularity is fine, a non-integrable one throws NumericalError.
double origin(const Integrand& f, double r, double rel_tol = kDefaultRelTol);

/// Integral of cos(lambda*y) * f(y) over [r, +inf) for a nonnegative,
/// eventually-monotone-decreasing f. Oscillation handled by direct panels
/// while lambda*y is moderate, then an integration-by-parts boundary term
/// whose remainder is bounded by f(R)/lambda.
double oscillatory_cos_tail(const Integrand& f, double lambda, double r,
                            double abs_tol);

/// Same for sin(lambda*y) * f(y) over [r, +inf).
double oscillatory_sin_tail(const Integrand& f, double lambda, double r,
                            double abs_tol);

}  // namespace levylab::quad
