#include "rearr/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rearr/quadrature.hpp"

namespace rearr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double inv_or_zero(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

double conjugate(int n) { return double(n) / double(n - 1); }

void check_dimension(int n) {
    if (n < 3) throw std::domain_error("gradient bounds: n must be >= 3");
}

}  // namespace

CalderonExponents::CalderonExponents(double p0_, double p1_, double q0_, double q1_)
    : p0(p0_), p1(p1_), q0(q0_), q1(q1_) {
    if (!(p0 >= 1.0) || !(p1 > p0)) throw std::domain_error("Calderon exponents: need 1 <= p0 < p1");
    if (!(q0 >= 1.0) || !(q1 >= 1.0) || q0 == q1)
        throw std::domain_error("Calderon exponents: need q0, q1 >= 1 and q0 != q1");
    alpha = (inv_or_zero(q0) - inv_or_zero(q1)) / (inv_or_zero(p0) - inv_or_zero(p1));
}

double calderon_apply(const Profile& g, const CalderonExponents& e, double t) {
    if (!(t > 0.0)) throw std::domain_error("calderon_apply: t must be positive");
    const double pivot = std::pow(t, e.alpha);
    const double lower = g.weighted_integral(inv_or_zero(e.p0) - 1.0, 0.0, pivot);
    const double upper = g.weighted_integral(inv_or_zero(e.p1) - 1.0, pivot, g.total_measure());
    if (std::isinf(lower) || std::isinf(upper)) return kInf;
    return std::pow(t, -inv_or_zero(e.q0)) * lower + std::pow(t, -inv_or_zero(e.q1)) * upper;
}

double sharp_gradient_bound(const Profile& f, int n, double s) {
    check_dimension(n);
    const double m = f.total_measure();
    if (!(s > 0.0) || !(s < m))
        throw std::domain_error("sharp_gradient_bound: s must lie in (0, |Omega|)");
    const double np = conjugate(n);
    const double head = f.integral(0.0, s);
    const double tail = f.weighted_integral(-1.0 / np, s, m);
    if (std::isinf(head) || std::isinf(tail)) return kInf;
    return std::pow(s, -1.0 / np) * head + tail;
}

double averaged_gradient_bound(const Profile& f, int n, double s) {
    check_dimension(n);
    const double m = f.total_measure();
    if (!(s > 0.0) || !(s < m))
        throw std::domain_error("averaged_gradient_bound: s must lie in (0, |Omega|)");
    const double w = -1.0 / conjugate(n);

    if (f.is_step()) {
        const auto& ends = f.step_right_ends();
        const auto& vals = f.step_values();
        double sum = 0.0;
        double left = 0.0;
        double cum = 0.0;  // integral of f* up to `left`
        for (std::size_t i = 0; i < ends.size(); ++i) {
            const double x0 = left;
            const double x1 = ends[i];
            const double v = vals[i];
            left = x1;
            const double lo = std::max(x0, s);
            if (lo < x1) {
                // On this piece f**(r) = v + c/r with c = cum - v*x0.
                const double c = cum - v * x0;
                sum += v * powlog_integral(w, 0.0, lo, x1, m);
                sum += c * powlog_integral(w - 1.0, 0.0, lo, x1, m);
            }
            cum += v * (x1 - x0);
        }
        // Beyond the support f** keeps decaying as ||f||_1 / r.
        const double support = ends.back();
        if (support < m && s < m) {
            const double lo = std::max(support, s);
            sum += cum * powlog_integral(w - 1.0, 0.0, lo, m, m);
        }
        return sum;
    }

    // Power sum: f**(r) is the power sum with coefficients coef/(expo+1).
    double sum = 0.0;
    for (const auto& term : f.power_terms()) {
        if (term.expo <= -1.0) return kInf;  // f* not integrable at 0
        sum += term.coef / (term.expo + 1.0) * powlog_integral(term.expo + w, 0.0, s, m, m);
    }
    return sum;
}

double k_functional_l1_lorentz(const Profile& f, int n, double s) {
    check_dimension(n);
    if (!(s > 0.0)) throw std::domain_error("k_functional_l1_lorentz: s must be positive");
    const double np = conjugate(n);
    const double m = f.total_measure();
    const double pivot = std::min(std::pow(s, np), m);
    const double head = f.integral(0.0, pivot);
    if (pivot >= m) return head;
    const double tail = f.weighted_integral(-1.0 / np, pivot, m);
    return head + s * tail;
}

double k_functional_weak_sup(const Profile& g, int n, double s) {
    check_dimension(n);
    if (!(s > 0.0)) throw std::domain_error("k_functional_weak_sup: s must be positive");
    const double np = conjugate(n);
    const double w = 1.0 / np;
    const double b = std::min(std::pow(s, np), g.total_measure());

    if (g.is_step()) {
        const auto& ends = g.step_right_ends();
        const auto& vals = g.step_values();
        double best = 0.0;
        double left = 0.0;
        for (std::size_t i = 0; i < ends.size() && left < b; ++i) {
            // t^{1/n'} is increasing, so each truncated piece peaks at its
            // right end.
            const double hi = std::min(ends[i], b);
            best = std::max(best, vals[i] * std::pow(hi, w));
            left = ends[i];
        }
        return best;
    }

    const auto& terms = g.power_terms();
    if (terms.empty()) return 0.0;
    if (terms.size() == 1) {
        double e = w + terms.front().expo;
        if (std::abs(e) < kExponentSnap) e = 0.0;
        if (e < 0.0) return kInf;
        if (e == 0.0) return terms.front().coef;
        return terms.front().coef * std::pow(b, e);
    }
    const double gamma = g.zero_limit_exponent();
    if (g.positive_near_zero() && w + gamma < 0.0) return kInf;
    return log_grid_max([&](double t) { return std::pow(t, w) * g.value(t); }, b * 1e-14, b, 2048);
}

}  // namespace rearr
