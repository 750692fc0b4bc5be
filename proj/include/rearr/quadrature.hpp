#pragma once

#include <functional>

namespace rearr {

/// Scalar integrand on a real interval.
using Integrand = std::function<double(double)>;

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute
    long evaluations = 0;
    bool converged = true;
};

/// Adaptive Gauss-Kronrod 15(7) integration of f over [a, b].
/// Bisects the worst interval until the global error estimate drops below
/// max(abs_tol, rel_tol * |value|) or the subdivision budget is exhausted.
QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    double abs_tol = 1e-12, double rel_tol = 1e-10,
                                    int max_intervals = 2000);

/// Integrates f over (0, b] when f may have an integrable singularity at 0.
/// The interval is split dyadically toward 0 (graded mesh) and each piece is
/// integrated adaptively; grading stops once piece contributions are
/// negligible against the requested tolerance.
QuadratureResult integrate_graded_zero(const Integrand& f, double b,
                                       double abs_tol = 1e-12, double rel_tol = 1e-10);

/// Integrates f over [a, b] with graded refinement toward a singular left
/// endpoint at `sing` (= a). Convenience wrapper used for weights like
/// (t - s)^p near t = s.
QuadratureResult integrate_graded(const Integrand& f, double a, double b,
                                  double abs_tol = 1e-12, double rel_tol = 1e-10);

/// Integrates f over (0, b] when f(s) behaves like s^zero_exponent (times a
/// slowly varying log factor) as s -> 0+. Requires zero_exponent > -1; the
/// power part is absorbed exactly by the substitution s = b * u^(1/(1+e)),
/// leaving at worst a logarithmic singularity for the graded integrator.
QuadratureResult integrate_zero_power(const Integrand& f, double zero_exponent, double b,
                                      double abs_tol = 1e-12, double rel_tol = 1e-10);

/// Exponents within this distance of a divergence boundary are treated as
/// sitting exactly on it; conjugate-exponent arithmetic in doubles cannot
/// distinguish them and the power antiderivatives blow up.
inline constexpr double kExponentSnap = 1e-9;

/// Integral over [a, b] of s^s_expo * (1 + log(log_scale/s))^log_expo.
/// Exact where an elementary antiderivative exists (log_expo = 0, or
/// s_expo = -1); graded adaptive quadrature otherwise. Returns +infinity
/// when the integral diverges at a = 0.
double powlog_integral(double s_expo, double log_expo, double a, double b, double log_scale);

/// Golden-section search for the maximum of a unimodal f on [a, b].
/// Returns the abscissa of the maximum found after `iters` contractions.
double golden_section_max(const Integrand& f, double a, double b, int iters = 80);

/// Maximum of f over (a, b] estimated on an n-point log-spaced grid followed
/// by one golden-section refinement in the two cells adjacent to the grid
/// argmax. Suitable for products of monotone factors.
double log_grid_max(const Integrand& f, double a, double b, int n = 512);

}  // namespace rearr
