#pragma once

#include <utility>

#include "rearr/grid_function.hpp"
#include "rearr/profile.hpp"

namespace rearr {

/// mu_u(t): total measure of the cells where |u| exceeds t. Nonincreasing in
/// t and bounded by the total measure. t < 0 is a domain error.
double distribution_function(const GridFunction& u, double t);

/// The decreasing rearrangement u* as a step profile: cells sorted by |value|
/// descending, measures accumulated into breakpoints. Ties in |value| merge
/// into a single piece, so the output is canonical.
Profile decreasing_rearrangement(const GridFunction& u);

/// The increasing rearrangement u_*(s) = u*(|Omega| - s): the reflection of
/// the profile about |Omega|/2. Nondecreasing, so it is carried by a thin
/// wrapper rather than a Profile.
class IncreasingProfile {
public:
    explicit IncreasingProfile(Profile source) : source_(std::move(source)) {}

    double total_measure() const { return source_.total_measure(); }
    double value(double s) const;
    const Profile& source() const { return source_; }

private:
    Profile source_;
};

IncreasingProfile increasing_rearrangement(const Profile& p);

/// f**(s) = (1/s) * integral of f* over (0, s); defined for s in (0, |Omega|].
/// Always >= f*(s). s <= 0 is a domain error.
double maximal_average(const Profile& p, double s);

/// med(u): the largest threshold t whose superlevel set {u >= t} still fills
/// at least half the domain.
double median(const GridFunction& u);

/// (u_plus, u_minus) with u = u_plus - u_minus, both nonnegative, cellwise.
std::pair<GridFunction, GridFunction> positive_negative_parts(const GridFunction& u);

/// Exact integral of u*(s) * v*(s) over (0, |Omega|] for two step profiles
/// on the same total measure (merged-partition product).
double product_integral(const Profile& u, const Profile& v);

/// Exact integral of u*(s) * v_*(s) over (0, |Omega|] (decreasing times
/// increasing rearrangement), the left end of the Hardy-Littlewood chain.
double product_integral_increasing(const Profile& u, const IncreasingProfile& v);

}  // namespace rearr
