#include "rearr/reverse_holder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rearr/quadrature.hpp"

namespace rearr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

double ball_vol(double r) { return 4.0 / 3.0 * kPi * r * r * r; }

// Fraction of the sphere |x| = rho lying inside B(center at distance d, r).
double cap_fraction(double rho, double d, double r) {
    if (rho <= 0.0) return d < r ? 1.0 : 0.0;
    if (d + rho <= r) return 1.0;
    if (rho >= d + r || rho + r <= d) return 0.0;
    const double cos_theta = (d * d + rho * rho - r * r) / (2.0 * d * rho);
    return 0.5 * (1.0 - std::min(1.0, std::max(-1.0, cos_theta)));
}

// integral over B(c, r), |c| = d, of g(|x|)^pw for a radial g; zero_expo is
// the power behaviour of g^pw at the origin.
double radial_ball_integral(const std::function<double(double)>& g_pow, double zero_expo,
                            double d, double r) {
    double sum = 0.0;
    const double lo_shell = std::max(0.0, d - r);
    const double hi_shell = d + r;
    if (d < r) {
        // Fully covered core (0, r - d].
        if (zero_expo + 2.0 <= -1.0) return kInf;
        auto core = [&](double rho) { return 4.0 * kPi * rho * rho * g_pow(rho); };
        sum += integrate_zero_power(core, zero_expo + 2.0, r - d, 1e-12, 1e-8).value;
        auto shell = [&](double rho) {
            return 4.0 * kPi * rho * rho * g_pow(rho) * cap_fraction(rho, d, r);
        };
        sum += integrate_adaptive(shell, r - d, hi_shell, 1e-12, 1e-8).value;
        return sum;
    }
    auto shell = [&](double rho) {
        return 4.0 * kPi * rho * rho * g_pow(rho) * cap_fraction(rho, d, r);
    };
    if (lo_shell == 0.0) {
        if (zero_expo + 2.0 <= -1.0) return kInf;
        return integrate_zero_power(shell, zero_expo + 2.0, hi_shell, 1e-12, 1e-8).value;
    }
    return integrate_adaptive(shell, lo_shell, hi_shell, 1e-12, 1e-8).value;
}

// integral over B(c, r) of |x_1|^e via the slab (cross-section) reduction.
double slab_ball_integral(double e, double c1, double r) {
    auto section = [&](double xi) {
        return std::pow(std::abs(c1 + xi), e) * kPi * (r * r - xi * xi);
    };
    const double kink = -c1;  // zero of |c1 + xi|
    if (kink > -r && kink < r) {
        auto left = [&](double u) { return section(kink - u); };
        auto right = [&](double u) { return section(kink + u); };
        return integrate_zero_power(left, e, kink + r, 1e-12, 1e-8).value +
               integrate_zero_power(right, e, r - kink, 1e-12, 1e-8).value;
    }
    return integrate_adaptive(section, -r, r, 1e-12, 1e-8).value;
}

double center_distance(const Ball& b) {
    return std::sqrt(b.center[0] * b.center[0] + b.center[1] * b.center[1] +
                     b.center[2] * b.center[2]);
}

}  // namespace

Potential Potential::constant(double value) {
    if (!(value >= 0.0)) throw std::domain_error("potential: constant must be nonnegative");
    Potential p;
    p.kind = Kind::kConstant;
    p.c = value;
    return p;
}

Potential Potential::abs_power(double coef, double gamma) {
    if (!(coef >= 0.0)) throw std::domain_error("potential: coefficient must be nonnegative");
    if (!(gamma > -3.0)) throw std::domain_error("potential: gamma must exceed -n for integrability");
    Potential p;
    p.kind = Kind::kAbsPower;
    p.c = coef;
    p.gamma = gamma;
    return p;
}

Potential Potential::poly_power(double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("potential: alpha must be positive");
    Potential p;
    p.kind = Kind::kPolyPower;
    p.alpha = alpha;
    return p;
}

Potential Potential::tabulated(std::vector<double> knots, std::vector<double> values) {
    if (knots.size() != values.size() || knots.size() < 2)
        throw std::domain_error("potential: table needs matching knots/values");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (i > 0 && !(knots[i] > knots[i - 1]))
            throw std::domain_error("potential: table knots must increase");
        if (!(values[i] >= 0.0)) throw std::domain_error("potential: table values must be >= 0");
    }
    Potential p;
    p.kind = Kind::kTabulated;
    p.knots = std::move(knots);
    p.values = std::move(values);
    return p;
}

Potential Potential::parse(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::vector<double> params;
    if (colon != std::string::npos) {
        std::stringstream rest(spec.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) params.push_back(std::stod(item));
    }
    if (kind == "constant") return constant(params.empty() ? 1.0 : params[0]);
    if (kind == "abs-power") {
        if (params.size() == 1) return abs_power(1.0, params[0]);
        if (params.size() == 2) return abs_power(params[0], params[1]);
        throw std::domain_error("potential: abs-power needs gamma or coef,gamma");
    }
    if (kind == "poly-power") {
        if (params.size() != 1) throw std::domain_error("potential: poly-power needs alpha");
        return poly_power(params[0]);
    }
    throw std::domain_error("potential: unknown kind '" + kind + "'");
}

std::string Potential::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::kConstant: os << "constant:" << c; break;
        case Kind::kAbsPower: os << "abs-power:" << c << "," << gamma; break;
        case Kind::kPolyPower: os << "poly-power:" << alpha; break;
        case Kind::kTabulated: os << "tabulated[" << knots.size() << "]"; break;
    }
    return os.str();
}

double Potential::radial_value(double r) const {
    switch (kind) {
        case Kind::kConstant: return c;
        case Kind::kAbsPower: return c * std::pow(r, gamma);
        case Kind::kTabulated: {
            if (r <= knots.front()) return values.front();
            if (r >= knots.back()) return values.back();
            auto it = std::upper_bound(knots.begin(), knots.end(), r);
            const std::size_t i = static_cast<size_t>(it - knots.begin());
            const double t = (r - knots[i - 1]) / (knots[i] - knots[i - 1]);
            return values[i - 1] + t * (values[i] - values[i - 1]);
        }
        case Kind::kPolyPower:
            throw std::domain_error("potential: poly-power is not radial");
    }
    return 0.0;
}

double rh_quotient(const Potential& V, const Ball& ball, double q) {
    if (!(q > 1.0)) throw std::domain_error("rh_quotient: q must exceed 1");
    if (!(ball.radius > 0.0)) throw std::domain_error("rh_quotient: radius must be positive");
    const double vol = ball_vol(ball.radius);
    const double d = center_distance(ball);
    const double r = ball.radius;

    if (V.kind == Potential::Kind::kConstant) return 1.0;  // includes V == 0, by convention

    double mean = 0.0;       // average of V
    double numerator = 0.0;  // (avg V^q)^{1/q} or ess sup

    if (V.kind == Potential::Kind::kPolyPower) {
        mean = slab_ball_integral(V.alpha, ball.center[0], r) / vol;
        if (std::isinf(q)) {
            numerator = std::pow(std::abs(ball.center[0]) + r, V.alpha);
        } else {
            numerator = std::pow(slab_ball_integral(V.alpha * q, ball.center[0], r) / vol,
                                 1.0 / q);
        }
    } else {
        auto g1 = [&](double rho) { return V.radial_value(rho); };
        const double e1 = V.kind == Potential::Kind::kAbsPower ? V.gamma : 0.0;
        mean = radial_ball_integral(g1, e1, d, r) / vol;
        if (std::isinf(q)) {
            // Monotone radial shapes peak at one end of the covered range.
            const double rho_min = std::max(0.0, d - r);
            const double rho_max = d + r;
            if (V.kind == Potential::Kind::kAbsPower && V.gamma < 0.0 && rho_min == 0.0)
                numerator = kInf;
            else if (V.kind == Potential::Kind::kAbsPower)
                numerator = V.gamma >= 0.0 ? V.radial_value(rho_max) : V.radial_value(rho_min);
            else {
                numerator = std::max(V.radial_value(std::max(rho_min, 1e-300)),
                                     V.radial_value(rho_max));
                for (std::size_t i = 0; i < V.knots.size(); ++i)
                    if (V.knots[i] > rho_min && V.knots[i] < rho_max)
                        numerator = std::max(numerator, V.values[i]);
            }
        } else {
            auto gq = [&](double rho) { return std::pow(V.radial_value(rho), q); };
            const double eq = e1 * q;
            const double qint = radial_ball_integral(gq, eq, d, r);
            numerator = std::isinf(qint) ? kInf : std::pow(qint / vol, 1.0 / q);
        }
    }

    if (mean == 0.0) return numerator == 0.0 ? 1.0 : kInf;
    if (std::isinf(numerator)) return kInf;
    return numerator / mean;
}

std::vector<Ball> BallFamily::balls() const {
    std::vector<Ball> out;
    std::vector<double> coords;
    if (center_grid <= 1)
        coords.push_back(0.0);
    else
        for (int i = 0; i < center_grid; ++i)
            coords.push_back(-center_extent + 2.0 * center_extent * i / (center_grid - 1));
    std::vector<double> rs;
    for (int i = 0; i < radii; ++i)
        rs.push_back(r_min * std::pow(r_max / r_min, radii == 1 ? 0.0 : double(i) / (radii - 1)));
    for (double x : coords)
        for (double y : coords)
            for (double z : coords)
                for (double r : rs) out.push_back({{x, y, z}, r});
    return out;
}

BallFamily BallFamily::refined() const {
    BallFamily f = *this;
    f.center_grid = 2 * center_grid - 1;
    f.radii = 2 * radii - 1;
    return f;
}

RhEstimate rh_constant_estimate(const Potential& V, double q, const BallFamily& family) {
    RhEstimate est;
    for (const Ball& b : family.balls()) {
        ++est.balls_scanned;
        const double quo = rh_quotient(V, b, q);
        if (quo > est.max_quotient) {
            est.max_quotient = quo;
            est.argmax = b;
        }
    }
    return est;
}

}  // namespace rearr
