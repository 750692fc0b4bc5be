#pragma once

#include "rearr/profile.hpp"

namespace rearr {

/// Exponents of the Calderon operator S^{p0,p1}_{q0,q1}. Requires
/// 1 <= p0 < p1 <= inf and q0, q1 in [1, inf] with q0 != q1; alpha is the
/// derived pivot exponent (1/q0 - 1/q1)/(1/p0 - 1/p1), recomputed here.
struct CalderonExponents {
    double p0, p1, q0, q1;
    double alpha;

    CalderonExponents(double p0_, double p1_, double q0_, double q1_);
};

/// The Calderon operator applied to a profile at t > 0:
///   t^{-1/q0} * integral_0^{t^alpha} s^{1/p0} g(s) ds/s
/// + t^{-1/q1} * integral_{t^alpha}^inf s^{1/p1} g(s) ds/s,
/// the upper integral truncated at the total measure since g vanishes beyond.
/// Divergent pieces return +infinity.
double calderon_apply(const Profile& g, const CalderonExponents& e, double t);

/// The two-term rearrangement bound on the gradient,
///   s^{-1/n'} integral_0^s f*(r) dr + integral_s^{|Omega|} f*(r) r^{-1/n'} dr,
/// with n' = n/(n-1). Defined for n >= 3 and s in (0, |Omega|).
double sharp_gradient_bound(const Profile& f, int n, double s);

/// The maximal-average variant:
///   integral_s^{|Omega|} f**(r) r^{-1/n'} dr.
/// Exact per piece for step profiles (f** is v + c/r there) and for
/// power-sum profiles (f** is again a power sum).
double averaged_gradient_bound(const Profile& f, int n, double s);

/// Holmstedt-type expression for K(s, f; L^1, L^{n,1}):
///   integral_0^{s^{n'}} f*(t) dt + s * integral_{s^{n'}}^{|Omega|} f*(t) t^{-1/n'} dt.
/// Once s^{n'} >= |Omega| this collapses to the L^1 norm of f.
double k_functional_l1_lorentz(const Profile& f, int n, double s);

/// Holmstedt-type expression for the couple (weak-L^{n'}, L^inf):
///   sup over t in (0, min(s^{n'}, |Omega|)] of t^{1/n'} g(t).
/// Exact breakpoint scan for step profiles.
double k_functional_weak_sup(const Profile& g, int n, double s);

}  // namespace rearr
