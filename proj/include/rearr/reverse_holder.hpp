#pragma once

#include <array>
#include <string>
#include <vector>

namespace rearr {

/// Candidate Schrodinger potential V >= 0 on R^3. The supported shapes all
/// reduce ball averages to one-dimensional integrals:
///   constant      V = c
///   abs_power     V(x) = c |x|^gamma (gamma > -3 for local integrability)
///   poly_power    V(x) = |x_1|^alpha (the first-coordinate polynomial)
///   tabulated     radial table about the origin, linear between knots
struct Potential {
    enum class Kind { kConstant, kAbsPower, kPolyPower, kTabulated };

    Kind kind = Kind::kConstant;
    double c = 1.0;       // constant value / radial coefficient
    double gamma = 0.0;   // abs_power exponent
    double alpha = 1.0;   // poly_power exponent
    std::vector<double> knots, values;  // tabulated radial data

    static Potential constant(double value);
    static Potential abs_power(double coef, double gamma);
    static Potential poly_power(double alpha);
    static Potential tabulated(std::vector<double> knots, std::vector<double> values);

    /// Parses "constant:2.0", "abs-power:1.0,-0.5", "poly-power:2".
    static Potential parse(const std::string& spec);
    std::string describe() const;

    double radial_value(double r) const;  // for radial kinds
};

struct Ball {
    std::array<double, 3> center{0.0, 0.0, 0.0};
    double radius = 1.0;
};

/// Reverse Holder quotient of V over a ball:
///   finite q : (avg of V^q)^{1/q} / (avg of V)
///   q = inf  : (ess sup over the ball)  / (avg of V)
/// Always >= 1 by the power-mean inequality. V identically zero on the ball
/// gives 1 by convention; a vanishing average with nonzero numerator gives
/// +infinity.
double rh_quotient(const Potential& V, const Ball& ball, double q);

/// Ball family for the class-constant scan.
struct BallFamily {
    int center_grid = 5;          // centers on an m^3 lattice in [-extent, extent]^3
    double center_extent = 2.0;
    int radii = 13;               // log-spaced radii
    double r_min = 1e-2;
    double r_max = 4.0;

    std::vector<Ball> balls() const;
    /// Denser family (doubled lattice and radii) for stability checks.
    BallFamily refined() const;
};

struct RhEstimate {
    double max_quotient = 0.0;
    Ball argmax;
    int balls_scanned = 0;
};

/// Family maximum of rh_quotient: a lower bound for the true class constant
/// [V]_{RH_q}, reported as such (the genuine sup runs over all balls).
RhEstimate rh_constant_estimate(const Potential& V, double q, const BallFamily& family = {});

}  // namespace rearr
