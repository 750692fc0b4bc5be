#include "rearr/profile.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rearr/quadrature.hpp"

namespace rearr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double snap_boundary(double w) { return std::abs(w + 1.0) < kExponentSnap ? -1.0 : w; }

double log_weight(double s, double c, double log_scale) {
    if (c == 0.0) return 1.0;
    return std::pow(1.0 + std::log(log_scale / s), c);
}

// Divergence of the integral of s^W (1+log(M/s))^c at the 0 endpoint.
bool integral_diverges_at_zero(double W, double c) {
    W = snap_boundary(W);
    if (W < -1.0) return true;
    if (W == -1.0) return c >= -1.0;
    return false;
}

}  // namespace

Profile Profile::step(std::vector<double> right_ends, std::vector<double> values,
                      double total_measure) {
    Profile p;
    p.kind_ = Kind::Step;
    p.right_ends_ = std::move(right_ends);
    p.values_ = std::move(values);
    p.total_measure_ = total_measure;
    p.validate_step();
    return p;
}

Profile Profile::power_sum(std::vector<PowerTerm> terms, double extent) {
    Profile p;
    p.kind_ = Kind::PowerSum;
    std::erase_if(terms, [](const PowerTerm& t) { return t.coef == 0.0; });
    std::sort(terms.begin(), terms.end(),
              [](const PowerTerm& a, const PowerTerm& b) { return a.expo < b.expo; });
    p.terms_ = std::move(terms);
    p.total_measure_ = extent;
    p.validate_power_sum();
    return p;
}

Profile Profile::constant(double value, double total_measure) {
    return step({total_measure}, {value}, total_measure);
}

Profile Profile::indicator(double set_measure, double total_measure) {
    if (!(set_measure > 0.0) || set_measure > total_measure)
        throw std::invalid_argument("Profile::indicator: set measure must lie in (0, total]");
    return step({set_measure}, {1.0}, total_measure);
}

Profile Profile::zero(double total_measure) { return step({total_measure}, {0.0}, total_measure); }

void Profile::validate_step() const {
    if (!(total_measure_ > 0.0))
        throw std::invalid_argument("Profile: total measure must be positive");
    if (right_ends_.empty() || right_ends_.size() != values_.size())
        throw std::invalid_argument("Profile: breakpoint/value size mismatch");
    double prev_end = 0.0;
    for (double x : right_ends_) {
        if (!(x > prev_end)) throw std::invalid_argument("Profile: breakpoints must increase");
        prev_end = x;
    }
    if (right_ends_.back() > total_measure_ * (1.0 + 1e-12))
        throw std::invalid_argument("Profile: support exceeds total measure");
    double prev_val = kInf;
    for (double v : values_) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("Profile: values must be finite and nonnegative");
        if (v > prev_val * (1.0 + 1e-12) + 1e-300)
            throw std::invalid_argument("Profile: values must be nonincreasing");
        prev_val = v;
    }
}

void Profile::validate_power_sum() const {
    if (!(total_measure_ > 0.0))
        throw std::invalid_argument("Profile: extent must be positive");
    for (const PowerTerm& t : terms_)
        if (!std::isfinite(t.coef) || !std::isfinite(t.expo))
            throw std::invalid_argument("Profile: power term must be finite");
    // Spot check monotonicity and sign on a log-spaced sample.
    double prev = kInf;
    for (int i = 0; i < 128; ++i) {
        const double s = total_measure_ * std::pow(10.0, -10.0 + 10.0 * (i + 1) / 128.0);
        double v = 0.0;
        for (const PowerTerm& t : terms_) v += t.coef * std::pow(s, t.expo);
        if (v < -1e-9 * (std::abs(prev) + 1.0))
            throw std::invalid_argument("Profile: power sum is negative on its support");
        if (v > prev * (1.0 + 1e-9) + 1e-12)
            throw std::invalid_argument("Profile: power sum is not nonincreasing");
        prev = v;
    }
}

double Profile::support() const {
    if (kind_ == Kind::Step) return right_ends_.back();
    return total_measure_;
}

double Profile::value(double s) const {
    if (s < 0.0) throw std::domain_error("Profile::value: s must be nonnegative");
    if (s >= total_measure_) return 0.0;
    if (kind_ == Kind::Step) {
        if (s >= right_ends_.back()) return 0.0;
        auto it = std::upper_bound(right_ends_.begin(), right_ends_.end(), s);
        return values_[static_cast<size_t>(it - right_ends_.begin())];
    }
    if (terms_.empty()) return 0.0;
    if (s == 0.0) {
        const double gamma = zero_limit_exponent();
        if (gamma < 0.0) return kInf;
        if (gamma > 0.0) return 0.0;
        double lim = 0.0;
        for (const PowerTerm& t : terms_)
            if (t.expo == 0.0) lim += t.coef;
        return lim;
    }
    double v = 0.0;
    for (const PowerTerm& t : terms_) v += t.coef * std::pow(s, t.expo);
    return std::max(v, 0.0);
}

double Profile::zero_limit_exponent() const {
    if (kind_ == Kind::Step || terms_.empty()) return 0.0;
    return terms_.front().expo;  // terms sorted ascending
}

bool Profile::positive_near_zero() const {
    if (kind_ == Kind::Step) return values_.front() > 0.0;
    if (terms_.empty()) return false;
    return terms_.front().coef > 0.0;
}

double Profile::distribution(double t) const {
    if (t < 0.0) throw std::domain_error("Profile::distribution: t must be nonnegative");
    if (kind_ == Kind::Step) {
        // Values are nonincreasing: find the last piece still above t.
        double extent = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (values_[i] > t)
                extent = right_ends_[i];
            else
                break;
        }
        return extent;
    }
    if (terms_.empty()) return 0.0;
    const double ext = total_measure_;
    if (value(ext * (1.0 - 1e-15)) > t) return ext;
    // Bisect p(s) = t on a log grid; p is continuous and nonincreasing.
    double lo = ext * 1e-300, hi = ext;
    if (!(value(lo) > t)) return 0.0;
    for (int i = 0; i < 220; ++i) {
        const double mid = std::sqrt(lo * hi);
        (value(mid) > t ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double Profile::weighted_integral(double w_expo, double a, double b) const {
    if (a < 0.0 || b < a) throw std::domain_error("Profile::weighted_integral: bad interval");
    b = std::min(b, support());
    if (b <= a) return 0.0;
    if (kind_ == Kind::Step) {
        if (a == 0.0 && values_.front() > 0.0 && snap_boundary(w_expo) <= -1.0) return kInf;
        double sum = 0.0;
        double left = 0.0;
        auto first = std::upper_bound(right_ends_.begin(), right_ends_.end(), a);
        std::size_t i = static_cast<size_t>(first - right_ends_.begin());
        left = (i == 0) ? 0.0 : right_ends_[i - 1];
        for (; i < right_ends_.size() && left < b; ++i) {
            const double x0 = std::max(left, a);
            const double x1 = std::min(right_ends_[i], b);
            if (values_[i] != 0.0 && x1 > x0)
                sum += values_[i] * powlog_integral(w_expo, 0.0, x0, x1, total_measure_);
            left = right_ends_[i];
        }
        return sum;
    }
    if (terms_.empty()) return 0.0;
    if (a == 0.0 && positive_near_zero() && snap_boundary(w_expo + terms_.front().expo) <= -1.0)
        return kInf;
    double sum = 0.0;
    for (const PowerTerm& t : terms_)
        sum += t.coef * powlog_integral(w_expo + t.expo, 0.0, a, b, total_measure_);
    return sum;
}

double Profile::norm_integral(double w_expo, double log_expo, double k, double log_scale) const {
    if (!(k > 0.0)) throw std::domain_error("Profile::norm_integral: k must be positive");
    const double ext = support();
    if (kind_ == Kind::Step) {
        if (values_.front() == 0.0) return 0.0;
        if (integral_diverges_at_zero(w_expo, log_expo)) return kInf;
        double sum = 0.0;
        double left = 0.0;
        for (std::size_t i = 0; i < right_ends_.size(); ++i) {
            const double x0 = left;
            const double x1 = right_ends_[i];
            left = x1;
            const double v = values_[i];
            if (v == 0.0) continue;
            sum += std::pow(v, k) * powlog_integral(w_expo, log_expo, x0, x1, log_scale);
        }
        return sum;
    }
    if (terms_.empty()) return 0.0;
    const double gamma = zero_limit_exponent();
    const double W = snap_boundary(w_expo + gamma * k);
    if (positive_near_zero() && integral_diverges_at_zero(W, log_expo)) return kInf;
    if (log_expo == 0.0 && k == 1.0) return weighted_integral(w_expo, 0.0, ext);
    if (log_expo == 0.0 && terms_.size() == 1) {
        const double c = std::pow(terms_.front().coef, k);
        return c * powlog_integral(W, 0.0, 0.0, ext, log_scale);
    }
    if (W == -1.0) {
        // Borderline case, convergent only through the log factor. Factor the
        // integrand as s^{-1} L^{log_expo} B(s)^k with B bounded near 0, and
        // substitute u = 1/L: the integrand becomes u^{-log_expo-2} B^k.
        auto bounded = [&](double s) {
            double acc = 0.0;
            for (const PowerTerm& t : terms_) acc += t.coef * std::pow(s, t.expo - gamma);
            return std::max(acc, 0.0);
        };
        const double ub = 1.0 / (1.0 + std::log(log_scale / ext));
        auto g = [&](double u) {
            const double s = log_scale * std::exp(1.0 - 1.0 / u);
            return std::pow(u, -log_expo - 2.0) * std::pow(bounded(s), k);
        };
        return integrate_zero_power(g, -log_expo - 2.0, ub, 1e-13, 1e-10).value;
    }
    auto f = [&](double s) {
        return std::pow(s, w_expo) * log_weight(s, log_expo, log_scale) *
               std::pow(value(s), k);
    };
    return integrate_zero_power(f, W, ext, 1e-13, 1e-10).value;
}

double Profile::weighted_sup(double w_expo, double log_expo, double log_scale) const {
    if (kind_ == Kind::Step && values_.front() == 0.0) return 0.0;  // zero profile
    if (kind_ == Kind::PowerSum && terms_.empty()) return 0.0;
    const double gamma = zero_limit_exponent();
    double W = w_expo + gamma;
    if (std::abs(W) < kExponentSnap) W = 0.0;
    if (positive_near_zero()) {
        if (W < 0.0) return kInf;
        if (W == 0.0 && log_expo > 0.0) return kInf;
    }
    if (kind_ == Kind::Step) {
        double best = 0.0;
        double left = 0.0;
        for (std::size_t i = 0; i < right_ends_.size(); ++i) {
            const double x0 = left;
            const double x1 = right_ends_[i];
            left = x1;
            const double v = values_[i];
            if (v == 0.0) continue;
            auto weight = [&](double s) {
                return std::pow(s, w_expo) * log_weight(s, log_expo, log_scale);
            };
            best = std::max(best, v * weight(x1));
            if (x0 > 0.0) best = std::max(best, v * weight(x0));
            if (w_expo == 0.0 && log_expo == 0.0) best = std::max(best, v);
            if (w_expo != 0.0 && log_expo != 0.0) {
                // Interior critical point of s^w (1+log(M/s))^c.
                const double sc = log_scale * std::exp(1.0 - log_expo / w_expo);
                if (sc > x0 && sc < x1) best = std::max(best, v * weight(sc));
            }
        }
        return best;
    }
    const double ext = total_measure_;
    auto g = [&](double s) {
        return std::pow(s, w_expo) * log_weight(s, log_expo, log_scale) * value(s);
    };
    return log_grid_max(g, ext * 1e-14, ext, 4096);
}

void write_profile_csv(std::ostream& os, const Profile& p) {
    if (!p.is_step())
        throw std::invalid_argument("profile csv: only step profiles are serialized");
    os << "s,value\n";
    char buf[64];
    double left = 0.0;
    for (std::size_t i = 0; i < p.step_right_ends().size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", left, p.step_values()[i]);
        os << buf;
        left = p.step_right_ends()[i];
    }
    // Explicit zero piece when the support ends before the total measure.
    if (left < p.total_measure()) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", left, 0.0);
        os << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.total_measure(), 0.0);
    os << buf;
}

Profile read_profile_csv(std::istream& is) {
    std::vector<double> lefts, vals;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            if (line.find("s,") != std::string::npos || line.find("value") != std::string::npos)
                continue;
        }
        std::istringstream row(line);
        double s = 0.0, v = 0.0;
        char comma = 0;
        if (!(row >> s >> comma >> v) || comma != ',')
            throw std::invalid_argument("profile csv: malformed row: " + line);
        lefts.push_back(s);
        vals.push_back(v);
    }
    if (lefts.size() < 2) throw std::invalid_argument("profile csv: need at least two rows");
    const double total = lefts.back();
    std::vector<double> right_ends, values;
    for (std::size_t i = 0; i + 1 < lefts.size(); ++i) {
        right_ends.push_back(lefts[i + 1]);
        values.push_back(vals[i]);
    }
    // Collapse a trailing zero piece created by support < total measure.
    while (values.size() > 1 && values.back() == 0.0) {
        values.pop_back();
        right_ends.pop_back();
    }
    return Profile::step(std::move(right_ends), std::move(values), total);
}

}  // namespace rearr
