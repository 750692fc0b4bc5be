#include "rearr/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace rearr {

double distribution_function(const GridFunction& u, double t) {
    if (t < 0.0) throw std::domain_error("distribution_function: t must be nonnegative");
    double sum = 0.0;
    for (const auto& c : u.cells())
        if (std::abs(c.value) > t) sum += c.measure;
    return sum;
}

Profile decreasing_rearrangement(const GridFunction& u) {
    std::vector<GridFunction::Cell> sorted(u.cells());
    for (auto& c : sorted) c.value = std::abs(c.value);
    std::sort(sorted.begin(), sorted.end(),
              [](const GridFunction::Cell& a, const GridFunction::Cell& b) {
                  return a.value > b.value;
              });
    std::vector<double> right_ends, values;
    right_ends.reserve(sorted.size());
    values.reserve(sorted.size());
    double cum = 0.0;
    for (const auto& c : sorted) {
        cum += c.measure;
        if (!values.empty() && values.back() == c.value)
            right_ends.back() = cum;  // merge ties into one breakpoint
        else {
            right_ends.push_back(cum);
            values.push_back(c.value);
        }
    }
    // Zero-valued tail carries no information beyond the support.
    while (values.size() > 1 && values.back() == 0.0) {
        values.pop_back();
        right_ends.pop_back();
    }
    return Profile::step(std::move(right_ends), std::move(values), u.total_measure());
}

double IncreasingProfile::value(double s) const {
    const double m = source_.total_measure();
    if (s < 0.0) throw std::domain_error("IncreasingProfile::value: s must be nonnegative");
    if (s >= m) return source_.value(0.0);
    return source_.value(m - s);
}

IncreasingProfile increasing_rearrangement(const Profile& p) { return IncreasingProfile(p); }

double maximal_average(const Profile& p, double s) {
    if (!(s > 0.0) || s > p.total_measure() * (1.0 + 1e-12))
        throw std::domain_error("maximal_average: s must lie in (0, total measure]");
    return p.integral(0.0, s) / s;
}

double median(const GridFunction& u) {
    // Superlevel measure D(t) = |{u >= t}| is a right-closed step function of
    // t with jumps at the cell values; the sup is attained at a cell value.
    std::vector<GridFunction::Cell> sorted(u.cells());
    std::sort(sorted.begin(), sorted.end(),
              [](const GridFunction::Cell& a, const GridFunction::Cell& b) {
                  return a.value > b.value;
              });
    const double half = 0.5 * u.total_measure();
    double cum = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        cum += sorted[i].measure;
        // Accumulate the full mass of a tied value before testing it.
        if (i + 1 < sorted.size() && sorted[i + 1].value == sorted[i].value) continue;
        if (cum >= half) return sorted[i].value;
    }
    return sorted.back().value;
}

std::pair<GridFunction, GridFunction> positive_negative_parts(const GridFunction& u) {
    GridFunction plus = u.map([](double v) { return 0.5 * (std::abs(v) + v); },
                              u.label().empty() ? "" : u.label() + "+");
    GridFunction minus = u.map([](double v) { return 0.5 * (std::abs(v) - v); },
                               u.label().empty() ? "" : u.label() + "-");
    return {std::move(plus), std::move(minus)};
}

namespace {

// Merged-partition integral of a(s) * b(s) where both are evaluated
// right-continuously; exact for piecewise-constant factors.
double merged_product(const Profile& u, const std::vector<double>& extra_breaks,
                      const std::function<double(double)>& other) {
    if (!u.is_step())
        throw std::invalid_argument("product integral: step profiles required");
    std::vector<double> breaks(u.step_right_ends());
    breaks.insert(breaks.end(), extra_breaks.begin(), extra_breaks.end());
    breaks.push_back(u.total_measure());
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    double sum = 0.0;
    double left = 0.0;
    for (double right : breaks) {
        if (right <= left || right > u.total_measure()) continue;
        const double mid = 0.5 * (left + right);
        sum += u.value(mid) * other(mid) * (right - left);
        left = right;
    }
    return sum;
}

}  // namespace

double product_integral(const Profile& u, const Profile& v) {
    if (!v.is_step())
        throw std::invalid_argument("product_integral: step profiles required");
    if (std::abs(u.total_measure() - v.total_measure()) > 1e-12 * u.total_measure())
        throw std::invalid_argument("product_integral: total measures differ");
    return merged_product(u, v.step_right_ends(), [&](double s) { return v.value(s); });
}

double product_integral_increasing(const Profile& u, const IncreasingProfile& v) {
    const Profile& src = v.source();
    if (!src.is_step())
        throw std::invalid_argument("product_integral_increasing: step profiles required");
    if (std::abs(u.total_measure() - src.total_measure()) > 1e-12 * u.total_measure())
        throw std::invalid_argument("product_integral_increasing: total measures differ");
    const double m = src.total_measure();
    std::vector<double> reflected;
    reflected.reserve(src.step_right_ends().size());
    for (double x : src.step_right_ends()) reflected.push_back(m - x);
    return merged_product(u, reflected, [&](double s) { return v.value(s); });
}

}  // namespace rearr
