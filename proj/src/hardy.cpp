#include "rearr/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "rearr/quadrature.hpp"

namespace rearr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_product(double x, double y) {
    if (x == 0.0 || y == 0.0) return 0.0;
    if (std::isinf(x) || std::isinf(y)) return kInf;
    return x * y;
}

// sup of coef * s^a * (1 + log(omega/s))^b over (lo, hi].
double powlog_sup(double coef, double a, double b, double lo, double hi, double omega) {
    if (coef == 0.0) return 0.0;
    auto eval = [&](double s) {
        return coef * std::pow(s, a) * std::pow(1.0 + std::log(omega / s), b);
    };
    double best = eval(hi);
    if (lo > 0.0)
        best = std::max(best, eval(lo));
    else {
        if (a < 0.0 || (a == 0.0 && b > 0.0)) return kInf;
        if (a == 0.0 && b == 0.0) best = std::max(best, coef);
    }
    if (a != 0.0 && b != 0.0) {
        const double sc = omega * std::exp(1.0 - b / a);
        if (sc > lo && sc < hi) best = std::max(best, eval(sc));
    }
    return best;
}

// integral over [lo, hi] of s^extra * w(s)^pw.
double weight_integral(const Weight& w, double pw, double extra, double lo, double hi,
                       double omega) {
    if (hi <= lo) return 0.0;
    if (!w.tabulated) {
        if (w.coef == 0.0) return 0.0;
        if (w.coef < 0.0) throw std::domain_error("hardy weight: negative coefficient");
        return std::pow(w.coef, pw) *
               powlog_integral(w.s_expo * pw + extra, w.log_expo * pw, lo, hi, omega);
    }
    auto f = [&](double s) { return std::pow(s, extra) * std::pow(w.value(s, omega), pw); };
    if (lo == 0.0) return integrate_zero_power(f, extra, hi, 1e-13, 1e-9).value;
    return integrate_adaptive(f, lo, hi, 1e-13, 1e-9).value;
}

double weight_sup(const Weight& w, double pw, double lo, double hi, double omega) {
    if (!w.tabulated) {
        if (w.coef == 0.0) return 0.0;
        return powlog_sup(std::pow(w.coef, pw), w.s_expo * pw, w.log_expo * pw, lo, hi, omega);
    }
    // Piecewise linear: extrema sit at knots and range endpoints.
    double best = std::max(std::pow(w.value(lo > 0.0 ? lo : hi * 1e-12, omega), pw),
                           std::pow(w.value(hi, omega), pw));
    for (std::size_t i = 0; i < w.knots.size(); ++i)
        if (w.knots[i] > lo && w.knots[i] < hi)
            best = std::max(best, std::pow(w.values[i], pw));
    return best;
}

// Kernel integral of condition "4.6": integral_0^t (t-s)^{kp} w(s) ds.
double kernel_integral(const Weight& w, double kp, double t, double omega) {
    const double half = 0.5 * t;
    auto left = [&](double s) { return std::pow(t - s, kp) * w.value(s, omega); };
    const double zero_expo = w.tabulated ? 0.0 : w.s_expo;
    if (zero_expo <= -1.0) return kInf;
    double sum = integrate_zero_power(left, zero_expo, half, 1e-13, 1e-9).value;
    auto right = [&](double tau) { return std::pow(tau, kp) * w.value(t - tau, omega); };
    sum += integrate_zero_power(right, kp, half, 1e-13, 1e-9).value;
    return sum;
}

// Log-grid sup of fn over (0, omega] with golden refinement and monotone
// blow-up detection toward r -> 0.
double sup_scan(const std::function<double(double)>& fn, double omega, int grid) {
    if (grid < 64) grid = 64;
    const double lo = omega * 1e-9;
    const double lla = std::log(lo), llb = std::log(omega);
    double best = -kInf;
    int best_i = 0;
    std::vector<double> xs(static_cast<size_t>(grid));
    for (int i = 0; i < grid; ++i) {
        const double x = std::exp(lla + (llb - lla) * i / (grid - 1));
        xs[static_cast<size_t>(i)] = x;
        const double v = fn(x);
        if (std::isinf(v)) return kInf;
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    {
        const double a = xs[static_cast<size_t>(std::max(0, best_i - 1))];
        const double b = xs[static_cast<size_t>(std::min(grid - 1, best_i + 1))];
        const double xr = golden_section_max(fn, a, b, 60);
        best = std::max(best, fn(xr));
    }
    if (best_i == 0) {
        // Probe further decades toward 0. Sustained geometric growth (>= 2%
        // per decade for every step) past the budget means the sup diverges
        // at the endpoint; slowly saturating log factors settle below that.
        double x = lo;
        double prev = best;
        double min_ratio = kInf;
        bool measured = false;
        for (int d = 0; d < 6; ++d) {
            x *= 0.1;
            const double v = fn(x);
            if (std::isinf(v)) return kInf;
            best = std::max(best, v);
            if (prev > 0.0) {
                min_ratio = std::min(min_ratio, v / prev);
                measured = true;
            }
            prev = v;
        }
        if (measured && min_ratio >= 1.02) return kInf;
    }
    return best;
}

}  // namespace

Weight Weight::power_log(double coef, double s_expo, double log_expo) {
    Weight w;
    w.coef = coef;
    w.s_expo = s_expo;
    w.log_expo = log_expo;
    if (!(coef >= 0.0) || !std::isfinite(coef) || !std::isfinite(s_expo) ||
        !std::isfinite(log_expo))
        throw std::domain_error("hardy weight: non-evaluable closed form");
    return w;
}

Weight Weight::table(std::vector<double> knots, std::vector<double> values) {
    Weight w;
    w.tabulated = true;
    if (knots.size() != values.size() || knots.size() < 2)
        throw std::domain_error("hardy weight: table needs matching knots/values, at least 2");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (i > 0 && !(knots[i] > knots[i - 1]))
            throw std::domain_error("hardy weight: table knots must increase");
        if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
            throw std::domain_error("hardy weight: table values must be finite and nonnegative");
    }
    w.knots = std::move(knots);
    w.values = std::move(values);
    return w;
}

double Weight::value(double s, double omega) const {
    if (!(s > 0.0)) throw std::domain_error("hardy weight: evaluation needs s > 0");
    if (!tabulated)
        return coef * std::pow(s, s_expo) * std::pow(1.0 + std::log(omega / s), log_expo);
    if (s <= knots.front()) return values.front();
    if (s >= knots.back()) return values.back();
    auto it = std::upper_bound(knots.begin(), knots.end(), s);
    const std::size_t i = static_cast<size_t>(it - knots.begin());
    const double t = (s - knots[i - 1]) / (knots[i] - knots[i - 1]);
    return values[i - 1] + t * (values[i] - values[i - 1]);
}

HardyCondition parse_hardy_condition(const std::string& token) {
    if (token == "4.3") return HardyCondition::kPrimal;
    if (token == "4.4") return HardyCondition::kDual;
    if (token == "4.5") return HardyCondition::kRearrangedPrimal;
    if (token == "4.6") return HardyCondition::kRearrangedDual;
    throw std::domain_error("unknown hardy condition token: " + token);
}

std::string hardy_condition_token(HardyCondition c) {
    switch (c) {
        case HardyCondition::kPrimal: return "4.3";
        case HardyCondition::kDual: return "4.4";
        case HardyCondition::kRearrangedPrimal: return "4.5";
        case HardyCondition::kRearrangedDual: return "4.6";
    }
    return "?";
}

double hardy_condition(HardyCondition cond, const HardyWeights& hw, int n, int grid) {
    if (grid < 64) throw std::domain_error("hardy_condition: grid must be >= 64");
    const double om = hw.omega;
    if (!(om > 0.0)) throw std::domain_error("hardy_condition: omega must be positive");

    auto conj = [](double p) {
        if (p == 1.0) return kInf;
        if (std::isinf(p)) return 1.0;
        return p / (p - 1.0);
    };

    std::function<double(double)> at_r;
    switch (cond) {
        case HardyCondition::kPrimal: {
            const double pp = conj(hw.p);
            at_r = [&hw, pp, om](double r) {
                const double t1 =
                    std::isinf(hw.q) ? weight_sup(hw.w, 1.0, r, om, om)
                                     : std::pow(weight_integral(hw.w, hw.q, 0.0, r, om, om),
                                                1.0 / hw.q);
                const double t2 =
                    std::isinf(pp) ? weight_sup(hw.v, -1.0, 0.0, r, om)
                                   : std::pow(weight_integral(hw.v, -pp, 0.0, 0.0, r, om),
                                              1.0 / pp);
                return safe_product(t1, t2);
            };
            break;
        }
        case HardyCondition::kDual: {
            const double pp = conj(hw.p);
            at_r = [&hw, pp, om](double r) {
                const double t1 =
                    std::isinf(hw.q) ? weight_sup(hw.w, 1.0, 0.0, r, om)
                                     : std::pow(weight_integral(hw.w, hw.q, 0.0, 0.0, r, om),
                                                1.0 / hw.q);
                const double t2 =
                    std::isinf(pp) ? weight_sup(hw.v, -1.0, r, om, om)
                                   : std::pow(weight_integral(hw.v, -pp, 0.0, r, om, om),
                                              1.0 / pp);
                return safe_product(t1, t2);
            };
            break;
        }
        case HardyCondition::kRearrangedPrimal: {
            const double np = double(n) / double(n - 1);
            at_r = [&hw, np, om, n](double t) {
                const double head = weight_integral(hw.w, 1.0, hw.p1 / n, 0.0, t, om);
                const double tail = weight_integral(hw.w, 1.0, -hw.p1 / np, t, om, om);
                const double mass = weight_integral(hw.v, 1.0, 0.0, 0.0, t, om);
                if (std::isinf(head) || std::isinf(tail)) return kInf;
                const double t1 = std::pow(head + std::pow(t, hw.p1) * tail, 1.0 / hw.p1);
                const double t2 = std::pow(mass, -1.0 / hw.p0);
                return safe_product(t1, t2);
            };
            break;
        }
        case HardyCondition::kRearrangedDual: {
            at_r = [&hw, om, n](double t) {
                const double ker = kernel_integral(hw.w, hw.p1 / n, t, om);
                const double mass = weight_integral(hw.v, 1.0, 0.0, 0.0, t, om);
                if (std::isinf(ker)) return kInf;
                const double t1 = std::pow(ker, 1.0 / hw.p1);
                const double t2 = std::pow(mass, -1.0 / hw.p0);
                return safe_product(t1, t2);
            };
            break;
        }
    }
    return sup_scan(at_r, om, grid);
}

namespace {

struct StepFn {
    std::vector<double> ends;  // right endpoints, last = omega
    std::vector<double> vals;

    double value(double s) const {
        auto it = std::upper_bound(ends.begin(), ends.end(), s);
        const std::size_t i = static_cast<size_t>(it - ends.begin());
        return i < vals.size() ? vals[i] : vals.back();
    }
    // integral of f over (0, s)
    double head(double s) const {
        double sum = 0.0, left = 0.0;
        for (std::size_t i = 0; i < ends.size(); ++i) {
            const double hi = std::min(ends[i], s);
            if (hi > left) sum += vals[i] * (hi - left);
            if (ends[i] >= s) break;
            left = ends[i];
        }
        return sum;
    }
    // integral of f(t) * t^{w} over (s, omega)
    double tail_weighted(double s, double w) const {
        double sum = 0.0, left = 0.0;
        for (std::size_t i = 0; i < ends.size(); ++i) {
            const double lo = std::max(left, s);
            if (ends[i] > lo && vals[i] != 0.0)
                sum += vals[i] * powlog_integral(w, 0.0, lo, ends[i], 1.0);
            left = ends[i];
        }
        return sum;
    }
};

StepFn random_step(std::mt19937_64& rng, double omega, bool nonincreasing) {
    std::uniform_int_distribution<int> count_dist(4, 24);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int m = count_dist(rng);
    std::vector<double> cuts(static_cast<size_t>(m - 1));
    for (double& c : cuts) c = omega * unif(rng);
    std::sort(cuts.begin(), cuts.end());
    StepFn f;
    f.ends = std::move(cuts);
    f.ends.push_back(omega);
    f.vals.resize(f.ends.size());
    for (double& v : f.vals) v = unif(rng);
    if (nonincreasing) std::sort(f.vals.rbegin(), f.vals.rend());
    return f;
}

// integral over (0, omega) of integrand built from a step function, split at
// the step's breakpoints; zero_expo / zero_log_expo describe the power-log
// behaviour of g at 0 (g ~ C s^zero_expo L^zero_log_expo).
double piecewise_integral(const std::function<double(double)>& g, const StepFn& f,
                          double zero_expo, double zero_log_expo, double omega) {
    double sum = 0.0, left = 0.0;
    for (double right : f.ends) {
        right = std::min(right, omega);
        if (right <= left) continue;
        if (left == 0.0) {
            if (std::abs(zero_expo + 1.0) < kExponentSnap) {
                // Borderline piece, convergent only through the log factor.
                // Substitute u = 1/L; the s underflow is capped because the
                // residual factor varies slowly there.
                if (zero_log_expo >= -1.0) return kInf;
                const double ub = 1.0 / (1.0 + std::log(omega / right));
                auto gu = [&](double u) {
                    double s = omega * std::exp(1.0 - 1.0 / u);
                    s = std::max(s, omega * 1e-280);
                    return g(s) * s / (u * u);
                };
                sum += integrate_zero_power(gu, -zero_log_expo - 2.0, ub, 1e-13, 1e-8).value;
            } else if (zero_expo < -1.0) {
                return kInf;
            } else {
                sum += integrate_zero_power(g, zero_expo, right, 1e-13, 1e-8).value;
            }
        } else {
            sum += integrate_adaptive(g, left, right, 1e-13, 1e-8).value;
        }
        left = right;
    }
    return sum;
}

}  // namespace

namespace {

HardySides sides_of(HardyCondition cond, const HardyWeights& hw, int n, const StepFn& f) {
    const double om = hw.omega;
    const double np = double(n) / double(n - 1);
    const double a = hw.w.tabulated ? 0.0 : hw.w.s_expo;
    const double al = hw.w.tabulated ? 0.0 : hw.w.log_expo;
    const double av = hw.v.tabulated ? 0.0 : hw.v.s_expo;
    const double avl = hw.v.tabulated ? 0.0 : hw.v.log_expo;
    HardySides out;
    switch (cond) {
        case HardyCondition::kPrimal: {
            auto g = [&](double s) {
                return std::pow(std::abs(hw.w.value(s, om) * f.head(s)), hw.q);
            };
            out.lhs =
                std::pow(piecewise_integral(g, f, (a + 1.0) * hw.q, al * hw.q, om), 1.0 / hw.q);
            auto h = [&](double s) {
                return std::pow(std::abs(hw.v.value(s, om) * f.value(s)), hw.p);
            };
            out.rhs = std::pow(piecewise_integral(h, f, av * hw.p, avl * hw.p, om), 1.0 / hw.p);
            break;
        }
        case HardyCondition::kDual: {
            auto g = [&](double s) {
                return std::pow(std::abs(hw.w.value(s, om) * f.tail_weighted(s, 0.0)), hw.q);
            };
            out.lhs = std::pow(piecewise_integral(g, f, a * hw.q, al * hw.q, om), 1.0 / hw.q);
            auto h = [&](double s) {
                return std::pow(std::abs(hw.v.value(s, om) * f.value(s)), hw.p);
            };
            out.rhs = std::pow(piecewise_integral(h, f, av * hw.p, avl * hw.p, om), 1.0 / hw.p);
            break;
        }
        case HardyCondition::kRearrangedPrimal: {
            auto g = [&](double s) {
                const double t = std::pow(s, -1.0 / np) * f.head(s);
                return std::pow(t, hw.p1) * hw.w.value(s, om);
            };
            out.lhs = std::pow(piecewise_integral(g, f, hw.p1 / n + a, al, om), 1.0 / hw.p1);
            auto h = [&](double s) { return std::pow(f.value(s), hw.p0) * hw.v.value(s, om); };
            out.rhs = std::pow(piecewise_integral(h, f, av, avl, om), 1.0 / hw.p0);
            break;
        }
        case HardyCondition::kRearrangedDual: {
            auto g = [&](double s) {
                const double t = f.tail_weighted(s, -1.0 / np);
                return std::pow(t, hw.p1) * hw.w.value(s, om);
            };
            out.lhs = std::pow(piecewise_integral(g, f, a, al, om), 1.0 / hw.p1);
            auto h = [&](double s) { return std::pow(f.value(s), hw.p0) * hw.v.value(s, om); };
            out.rhs = std::pow(piecewise_integral(h, f, av, avl, om), 1.0 / hw.p0);
            break;
        }
    }
    return out;
}

}  // namespace

HardySides hardy_sides(HardyCondition cond, const HardyWeights& hw, int n,
                       const std::vector<double>& right_ends, const std::vector<double>& values) {
    if (right_ends.size() != values.size() || right_ends.empty())
        throw std::domain_error("hardy_sides: breakpoint/value size mismatch");
    StepFn f{right_ends, values};
    return sides_of(cond, hw, n, f);
}

HardyProbeReport hardy_inequality_probe(HardyCondition cond, const HardyWeights& hw, int n,
                                        int trials, std::uint64_t seed) {
    if (trials <= 0) throw std::domain_error("hardy_inequality_probe: trials must be positive");
    HardyProbeReport report;
    report.condition = cond;
    report.trials = trials;
    report.seed = seed;
    report.sup_estimate = hardy_condition(cond, hw, n, 512);

    const bool rearranged = cond == HardyCondition::kRearrangedPrimal ||
                            cond == HardyCondition::kRearrangedDual;
    for (int trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(trial));
        StepFn f = random_step(rng, hw.omega, rearranged);
        const HardySides sides = sides_of(cond, hw, n, f);
        if (sides.rhs == 0.0 || std::isinf(sides.rhs)) continue;
        report.max_ratio = std::max(report.max_ratio, sides.lhs / sides.rhs);
    }
    return report;
}

}  // namespace rearr
