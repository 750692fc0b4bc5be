#pragma once

#include "rearr/profile.hpp"

namespace rearr {

/// Exponent pair (q, s) of a Lorentz space L^{q,s}: q in [1, inf], s in
/// (0, inf]; q = inf is admissible only with s = inf (the essential sup).
/// Construction rejects anything else.
struct LorentzExponents {
    double q;
    double s;

    LorentzExponents(double q_, double s_);
    bool is_weak() const;  // s = inf
};

/// Exponents (q, k, beta) of a Lorentz-Zygmund space L^{q,k}(log L)^beta.
/// Admissible: q in (1, inf], k in (0, inf], beta real; or q = 1,
/// k in (0, 1], beta >= 0.
struct LorentzZygmundExponents {
    double q;
    double k;
    double beta;

    LorentzZygmundExponents(double q_, double k_, double beta_);
};

/// ||u||_{L^{q,s}} of a rearrangement profile:
///   s < inf : ( integral (t^{1/q-1/s} u*(t))^s dt )^{1/s}
///   s = inf : sup t^{1/q} u*(t)
/// Divergent norms come back as +infinity rather than an exception.
double lorentz_quasinorm(const Profile& p, const LorentzExponents& e);

/// ||u||_{L^{q,k}(log L)^beta} with the weight (1 + log(|Omega|/s))^beta;
/// the k = inf branch takes the sup of the weighted profile.
double lorentz_zygmund_quasinorm(const Profile& p, const LorentzZygmundExponents& e);

/// First-order Lorentz-Sobolev norm: ||u||_{L^{q,s}} + || |grad u| ||_{L^{q,s}}.
/// Both profiles must live on the same total measure.
double lorentz_sobolev_norm(const Profile& u, const Profile& grad, const LorentzExponents& e);

}  // namespace rearr
