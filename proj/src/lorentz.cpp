#include "rearr/lorentz.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rearr {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

LorentzExponents::LorentzExponents(double q_, double s_) : q(q_), s(s_) {
    if (std::isnan(q) || std::isnan(s)) throw std::domain_error("Lorentz exponents: nan");
    if (!(q >= 1.0)) throw std::domain_error("Lorentz exponents: q must be >= 1");
    if (!(s > 0.0)) throw std::domain_error("Lorentz exponents: s must be positive");
    if (std::isinf(q) && !std::isinf(s))
        throw std::domain_error("Lorentz exponents: q = inf requires s = inf");
}

bool LorentzExponents::is_weak() const { return std::isinf(s); }

LorentzZygmundExponents::LorentzZygmundExponents(double q_, double k_, double beta_)
    : q(q_), k(k_), beta(beta_) {
    if (std::isnan(q) || std::isnan(k) || std::isnan(beta))
        throw std::domain_error("Lorentz-Zygmund exponents: nan");
    const bool main_range = q > 1.0 && k > 0.0;
    const bool endpoint = q == 1.0 && k > 0.0 && k <= 1.0 && beta >= 0.0;
    if (!main_range && !endpoint)
        throw std::domain_error("Lorentz-Zygmund exponents: outside the admissible range");
}

double lorentz_quasinorm(const Profile& p, const LorentzExponents& e) {
    if (e.is_weak()) {
        const double w = std::isinf(e.q) ? 0.0 : 1.0 / e.q;
        return p.weighted_sup(w, 0.0, p.total_measure());
    }
    const double w = e.s / e.q - 1.0;
    const double val = p.norm_integral(w, 0.0, e.s, p.total_measure());
    if (std::isinf(val)) return kInf;
    return std::pow(val, 1.0 / e.s);
}

double lorentz_zygmund_quasinorm(const Profile& p, const LorentzZygmundExponents& e) {
    const double m = p.total_measure();
    const double inv_q = std::isinf(e.q) ? 0.0 : 1.0 / e.q;
    if (std::isinf(e.k)) return p.weighted_sup(inv_q, e.beta, m);
    const double val = p.norm_integral(inv_q * e.k - 1.0, e.beta * e.k, e.k, m);
    if (std::isinf(val)) return kInf;
    return std::pow(val, 1.0 / e.k);
}

double lorentz_sobolev_norm(const Profile& u, const Profile& grad, const LorentzExponents& e) {
    if (std::abs(u.total_measure() - grad.total_measure()) > 1e-12 * u.total_measure())
        throw std::domain_error("lorentz_sobolev_norm: profiles live on different measures");
    return lorentz_quasinorm(u, e) + lorentz_quasinorm(grad, e);
}

}  // namespace rearr
