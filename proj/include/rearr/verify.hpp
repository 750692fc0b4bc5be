#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rearr/profile.hpp"
#include "rearr/radial_solver.hpp"

namespace rearr {

/// What a verification case claims about the solved problem. The string
/// tokens used in configs and reports are fixed interface ids:
///   thm1.1, sharp-example, counterexample-1.5, thm1.2-case(i)..(viii),
///   prop3.1, prop3.2
enum class Claim {
    kGradientEstimate,        // thm1.1: |grad u|*(s) <= C * two-term bound
    kSharpExample,            // sharp-example: two-sided comparability for the model datum
    kLogBoundCounterexample,  // counterexample-1.5: averaged bound under-estimates
    kLorentzCase,             // thm1.2-case(i..viii): Lorentz-scale gradient bounds
    kGradientSupBound,        // prop3.1: sup |grad u| <= C ||f||_{L^{n,1}}
    kL1Stability,             // prop3.2: weak-norm Lipschitz dependence on the datum
};

Claim parse_claim(const std::string& token, int& lorentz_case);
std::string claim_token(Claim c, int lorentz_case = 0);

struct SGridSpec {
    int count = 200;
    double lo_frac = 1e-3;   // fractions of |Omega|; the estimate lives on the
    double hi_frac = 0.999;  // open interval, so endpoints stay excluded
    std::vector<double> make(double omega) const;
};

/// Claim-specific exponents (which of p/q/k matters depends on the case).
struct CaseParams {
    double p = 1.2;
    double q = 2.0;
    double k = 1.0;
};

struct VerificationCase {
    std::string id;
    Claim claim = Claim::kGradientEstimate;
    int lorentz_case = 0;  // 1..8 when claim == kLorentzCase
    RadialProblem problem;
    SGridSpec s_grid;
    std::uint64_t seed = 1;
    int battery_random = 0;  // extra random smooth data besides the configured f
    CaseParams params;
    RadialFn pair_g = RadialFn::constant(0.0);  // second datum for prop3.2
    bool has_pair = false;
};

struct RatioSample {
    double s, lhs, rhs, ratio;
};

struct VerificationReport {
    int schema = 1;
    std::string id;
    std::string claim;
    std::vector<RatioSample> ratio_curve;
    double empirical_C = 0.0;
    double refinement_drift = 0.0;
    bool pass = false;
    std::string note;
    std::uint64_t provenance = 0;  // FNV-1a hash of the case config
};

VerificationReport run_case(const VerificationCase& c);

VerificationReport verify_gradient_estimate(const VerificationCase& c);
VerificationReport verify_sharp_example(const VerificationCase& c);
VerificationReport verify_log_bound_counterexample(const VerificationCase& c);
VerificationReport verify_lorentz_scale_case(const VerificationCase& c);
VerificationReport verify_gradient_sup_bound(const VerificationCase& c);
VerificationReport verify_l1_stability(const VerificationCase& c);

/// Model data on the unit ball of R^3 with closed-form rearrangements:
/// f0 = r - 1 - 2/r (solution of -Lap u + u = f0 is the cone r - 1) and
/// f1 = -2/r (same solution for the plain Laplace problem).
Profile model_f0_profile();
Profile model_f1_profile();
double model_f0_star(double s);
double model_f0_sharp_bound(double s);     // closed form of the two-term bound
double model_f1_averaged_bound(double s);  // closed form of the averaged bound

/// Re-derives the three closed forms numerically; runs before any
/// solver-based case in every batch. Returns false with a diagnostic when a
/// check misses its tolerance.
bool closed_form_gate(std::string* detail);

struct BatchResult {
    int exit_code = 0;  // 0 all pass, 1 case failure, 2 config error
    std::vector<VerificationReport> reports;
    std::string error;
};

/// Executes a JSON batch config: one report JSON per case plus summary.csv
/// in the output directory. Deterministic for fixed seeds.
BatchResult run_batch(const std::string& config_path, const std::string& output_dir_override = "");

std::string report_to_json(const VerificationReport& r);
VerificationCase case_from_json_string(const std::string& text);

/// Random smooth radial datum used by verification batteries (deterministic
/// in seed and index).
RadialFn battery_datum(std::uint64_t seed, int index, double R);

}  // namespace rearr
