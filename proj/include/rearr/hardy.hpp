#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rearr {

/// Nonnegative weight on (0, omega], either the closed form
///   coef * s^s_expo * (1 + log(omega/s))^log_expo
/// or tabulated (piecewise linear between knots, constant beyond them).
struct Weight {
    double coef = 1.0;
    double s_expo = 0.0;
    double log_expo = 0.0;
    bool tabulated = false;
    std::vector<double> knots;   // strictly increasing abscissae in (0, omega]
    std::vector<double> values;  // nonnegative

    static Weight power_log(double coef, double s_expo, double log_expo = 0.0);
    static Weight table(std::vector<double> knots, std::vector<double> values);

    double value(double s, double omega) const;
};

/// The four weighted-Hardy sup conditions. The first pair gates the Hardy
/// inequality for integral-from-zero / integral-to-end averaging of a Borel
/// function; the second pair gates the rearranged variants with the
/// dimensional kernels s^{p1/n} and (t - s)^{p1/n}.
enum class HardyCondition {
    kPrimal,           // interface token "4.3"
    kDual,             // interface token "4.4"
    kRearrangedPrimal, // interface token "4.5"
    kRearrangedDual,   // interface token "4.6"
};

HardyCondition parse_hardy_condition(const std::string& token);
std::string hardy_condition_token(HardyCondition c);

/// Weight pair plus the exponents of whichever condition branch applies:
/// (p, q) for the primal/dual conditions, (p0, p1) for the rearranged ones.
struct HardyWeights {
    Weight w;
    Weight v;
    double omega = 1.0;  // |Omega|
    double p = 1.0, q = 1.0;
    double p0 = 1.0, p1 = 1.0;
};

/// Evaluates the supremum display of the chosen condition on a log-spaced
/// r-grid (size >= 64) with one golden-section refinement around the argmax.
/// Returns the sup estimate, or +infinity when values grow monotonically
/// past budget toward an endpoint (or an inner integral diverges).
double hardy_condition(HardyCondition cond, const HardyWeights& hw, int n, int grid = 512);

struct HardyProbeReport {
    HardyCondition condition;
    double sup_estimate = 0.0;
    double max_ratio = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
};

/// Both sides of the inequality gated by `cond`, evaluated for an explicit
/// nonnegative step function on (0, omega] given by right endpoints (the last
/// one = omega) and piece values. The random probe is built on this.
struct HardySides {
    double lhs = 0.0;
    double rhs = 0.0;
};
HardySides hardy_sides(HardyCondition cond, const HardyWeights& hw, int n,
                       const std::vector<double>& right_ends, const std::vector<double>& values);

/// Monte-Carlo check of the inequality gated by `cond`: random nonnegative
/// step functions (nonincreasing ones for the rearranged conditions) are fed
/// through both sides and the largest LHS/RHS ratio is reported. Fully
/// deterministic for a fixed seed.
HardyProbeReport hardy_inequality_probe(HardyCondition cond, const HardyWeights& hw, int n,
                                        int trials, std::uint64_t seed);

}  // namespace rearr
