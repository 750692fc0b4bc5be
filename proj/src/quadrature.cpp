#include "rearr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace rearr {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Interval {
    double a, b;
    double value;
    double error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const Integrand& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(mid);
    double kronrod = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double fsum = f(mid - dx) + f(mid + dx);
        kronrod += kKronrodWeights[j] * fsum;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    double err = std::abs(kronrod - gauss);
    // QUADPACK-style sharpening of the raw difference.
    if (err > 0.0) err = std::pow(200.0 * err, 1.5);
    return {a, b, kronrod, err};
}

}  // namespace

QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    double abs_tol, double rel_tol, int max_intervals) {
    QuadratureResult res;
    if (a == b) return res;
    std::priority_queue<Interval> heap;
    Interval whole = gk15(f, a, b);
    res.evaluations = 15;
    double total = whole.value;
    double total_err = whole.error;
    heap.push(whole);
    int used = 1;
    while (used < max_intervals) {
        const double tol = std::max(abs_tol, rel_tol * std::abs(total));
        if (total_err <= tol) break;
        Interval worst = heap.top();
        heap.pop();
        const double m = 0.5 * (worst.a + worst.b);
        if (m <= worst.a || m >= worst.b) {  // interval at rounding limit
            heap.push({worst.a, worst.b, worst.value, 0.0});
            total_err -= worst.error;
            continue;
        }
        Interval left = gk15(f, worst.a, m);
        Interval right = gk15(f, m, worst.b);
        res.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++used;
    }
    res.value = total;
    res.error_estimate = total_err;
    res.converged = total_err <= std::max(abs_tol, rel_tol * std::abs(total)) * 4.0 ||
                    total_err <= abs_tol * 16.0;
    return res;
}

QuadratureResult integrate_graded_zero(const Integrand& f, double b,
                                       double abs_tol, double rel_tol) {
    QuadratureResult res;
    if (b <= 0.0) return res;
    double hi = b;
    double lo = 0.5 * b;
    const double floor = b * 1e-15;
    for (int k = 0; k < 64; ++k) {
        QuadratureResult piece = integrate_adaptive(f, lo, hi, abs_tol * 0.25, rel_tol, 400);
        res.value += piece.value;
        res.error_estimate += piece.error_estimate;
        res.evaluations += piece.evaluations;
        res.converged = res.converged && piece.converged;
        const bool tail_negligible =
            std::abs(piece.value) < std::max(abs_tol * 0.05, rel_tol * 0.05 * std::abs(res.value));
        if (lo <= floor || (k > 4 && tail_negligible)) break;
        hi = lo;
        lo *= 0.5;
    }
    return res;
}

QuadratureResult integrate_graded(const Integrand& f, double a, double b,
                                  double abs_tol, double rel_tol) {
    if (a == 0.0) return integrate_graded_zero(f, b, abs_tol, rel_tol);
    QuadratureResult shifted =
        integrate_graded_zero([&](double t) { return f(a + t); }, b - a, abs_tol, rel_tol);
    return shifted;
}

double powlog_integral(double s_expo, double log_expo, double a, double b, double log_scale) {
    if (b <= a) return 0.0;
    if (std::abs(s_expo + 1.0) < kExponentSnap) s_expo = -1.0;
    if (a == 0.0) {
        const bool diverges = s_expo < -1.0 || (s_expo == -1.0 && log_expo >= -1.0);
        if (diverges) return std::numeric_limits<double>::infinity();
    }
    if (log_expo == 0.0) {
        if (s_expo == -1.0) return std::log(b / a);
        return (std::pow(b, s_expo + 1.0) - std::pow(a, s_expo + 1.0)) / (s_expo + 1.0);
    }
    if (s_expo == -1.0) {
        // Substitute L = 1 + log(log_scale/s).
        const double Lb = 1.0 + std::log(log_scale / b);
        if (a == 0.0) return -std::pow(Lb, log_expo + 1.0) / (log_expo + 1.0);
        const double La = 1.0 + std::log(log_scale / a);
        if (log_expo == -1.0) return std::log(La / Lb);
        return (std::pow(La, log_expo + 1.0) - std::pow(Lb, log_expo + 1.0)) / (log_expo + 1.0);
    }
    auto f = [&](double s) {
        return std::pow(s, s_expo) * std::pow(1.0 + std::log(log_scale / s), log_expo);
    };
    if (a == 0.0) return integrate_zero_power(f, s_expo, b, 1e-13, 1e-10).value;
    return integrate_adaptive(f, a, b, 1e-13, 1e-10).value;
}

QuadratureResult integrate_zero_power(const Integrand& f, double zero_exponent, double b,
                                      double abs_tol, double rel_tol) {
    QuadratureResult res;
    if (b <= 0.0) return res;
    if (!(zero_exponent > -1.0)) {
        res.converged = false;
        res.value = std::numeric_limits<double>::infinity();
        return res;
    }
    const double m = 1.0 / (1.0 + zero_exponent);
    // s = b * u^m maps (0,1] -> (0,b]; ds = b*m*u^(m-1) du absorbs the power.
    auto g = [&](double u) {
        const double s = b * std::pow(u, m);
        return f(s) * b * m * std::pow(u, m - 1.0);
    };
    return integrate_graded_zero(g, 1.0, abs_tol, rel_tol);
}

double golden_section_max(const Integrand& f, double a, double b, int iters) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters && (b - a) > 0.0; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? x1 : x2;
}

double log_grid_max(const Integrand& f, double a, double b, int n) {
    if (!(a > 0.0)) a = b * 1e-12;
    if (n < 3) n = 3;
    const double la = std::log(a), lb = std::log(b);
    double best = -std::numeric_limits<double>::infinity();
    int best_i = 0;
    std::vector<double> xs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = std::exp(la + (lb - la) * i / (n - 1));
        xs[static_cast<size_t>(i)] = x;
        const double v = f(x);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    const double lo = xs[static_cast<size_t>(std::max(0, best_i - 1))];
    const double hi = xs[static_cast<size_t>(std::min(n - 1, best_i + 1))];
    const double xr = golden_section_max(f, lo, hi, 60);
    return std::max(best, f(xr));
}

}  // namespace rearr
