#pragma once

#include <iosfwd>
#include <vector>

namespace rearr {

/// Nonincreasing, nonnegative, right-continuous function on (0, total_measure],
/// identically zero from total_measure on: the shape of a decreasing
/// rearrangement u*. Two representations are supported and every operator in
/// the library accepts both:
///
///  - Step: piecewise constant, produced by rearranging a GridFunction.
///    Integrals against power weights are evaluated with exact antiderivatives.
///  - PowerSum: p(s) = sum_j coef_j * s^expo_j on (0, extent), for closed-form
///    profiles such as pure powers. The dominant exponent at 0 doubles as the
///    integrability tag; power-weighted integrals of single terms are exact and
///    everything else falls back to graded adaptive quadrature.
///
/// Norms and operators that diverge return +infinity instead of throwing, so
/// membership probes stay expressible.
class Profile {
public:
    struct PowerTerm {
        double coef;
        double expo;
    };

    Profile() = default;

    /// Piecewise-constant profile: values[i] on [right_ends[i-1], right_ends[i])
    /// with right_ends[-1] = 0. right_ends must be strictly increasing and end
    /// at most at total_measure; values must be nonincreasing and nonnegative.
    static Profile step(std::vector<double> right_ends, std::vector<double> values,
                        double total_measure);

    /// Closed-form profile sum_j coef_j s^expo_j on (0, extent), zero beyond.
    /// Must be nonincreasing and nonnegative on its support (spot-checked).
    static Profile power_sum(std::vector<PowerTerm> terms, double extent);

    static Profile constant(double value, double total_measure);
    static Profile indicator(double set_measure, double total_measure);
    static Profile zero(double total_measure);

    bool is_step() const { return kind_ == Kind::Step; }
    double total_measure() const { return total_measure_; }

    /// Right end of the support (last breakpoint / extent); <= total_measure.
    double support() const;

    const std::vector<double>& step_right_ends() const { return right_ends_; }
    const std::vector<double>& step_values() const { return values_; }
    const std::vector<PowerTerm>& power_terms() const { return terms_; }

    /// Right-continuous evaluation; 0 for s >= total_measure; the s = 0 value
    /// is the essential sup (may be +infinity for singular closed forms).
    double value(double s) const;

    /// p(s) ~ C s^gamma as s -> 0+: gamma (0 for step profiles).
    double zero_limit_exponent() const;
    /// Whether the profile is positive in a neighbourhood of 0.
    bool positive_near_zero() const;

    /// Measure of { p > t }: the distribution function of the profile.
    double distribution(double t) const;

    /// Exact-where-possible integral of s^w_expo * p(s) over [a, b], with the
    /// paper-side convention p = 0 beyond the support. Returns +infinity when
    /// the integral diverges at a = 0.
    double weighted_integral(double w_expo, double a, double b) const;

    /// Plain integral over [a, b].
    double integral(double a, double b) const { return weighted_integral(0.0, a, b); }

    /// Integral over (0, support] of
    ///   s^w_expo * (1 + log(log_scale/s))^log_expo * p(s)^k.
    /// This is the workhorse behind the norm family; +infinity on divergence,
    /// which is decided analytically from the exponents before integrating.
    double norm_integral(double w_expo, double log_expo, double k, double log_scale) const;

    /// sup over (0, total_measure] of s^w_expo (1 + log(log_scale/s))^log_expo p(s).
    /// Exact breakpoint/critical-point scan for step profiles, log-grid scan with
    /// golden-section refinement otherwise. +infinity when unbounded near 0.
    double weighted_sup(double w_expo, double log_expo, double log_scale) const;

private:
    enum class Kind { Step, PowerSum };

    void validate_step() const;
    void validate_power_sum() const;

    Kind kind_ = Kind::Step;
    double total_measure_ = 0.0;
    // Step representation
    std::vector<double> right_ends_;
    std::vector<double> values_;
    // PowerSum representation
    std::vector<PowerTerm> terms_;
};

/// CSV round trip for step profiles. Rows are "s,value" where s is the left
/// endpoint of each constant piece; the final row is always
/// (total_measure, 0).
void write_profile_csv(std::ostream& os, const Profile& p);
Profile read_profile_csv(std::istream& is);

}  // namespace rearr
