#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rearr/verify.hpp"

using namespace rearr;

namespace {
const double kV = 4.0 * M_PI / 3.0;

VerificationCase small_model_case() {
    VerificationCase c;
    c.id = "t";
    c.claim = Claim::kGradientEstimate;
    c.problem.n = 3;
    c.problem.R = 1.0;
    c.problem.V = RadialFn::constant(1.0);
    c.problem.f = RadialFn::f0();
    c.problem.bc = BoundaryCondition::kDirichlet;
    c.problem.mesh = {500, 1.5};
    c.s_grid.count = 60;
    return c;
}

std::string write_temp(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << text;
    return path.string();
}
}  // namespace

TEST_CASE("claim tokens round trip") {
    int which = 0;
    CHECK(parse_claim("thm1.1", which) == Claim::kGradientEstimate);
    CHECK(parse_claim("sharp-example", which) == Claim::kSharpExample);
    CHECK(parse_claim("counterexample-1.5", which) == Claim::kLogBoundCounterexample);
    CHECK(parse_claim("prop3.1", which) == Claim::kGradientSupBound);
    CHECK(parse_claim("prop3.2", which) == Claim::kL1Stability);
    CHECK(parse_claim("thm1.2-case(vi)", which) == Claim::kLorentzCase);
    CHECK(which == 6);
    for (int i = 1; i <= 8; ++i) {
        const std::string tok = claim_token(Claim::kLorentzCase, i);
        int back = 0;
        CHECK(parse_claim(tok, back) == Claim::kLorentzCase);
        CHECK(back == i);
    }
    CHECK_THROWS_AS(parse_claim("thm9.9", which), std::domain_error);
}

TEST_CASE("model closed forms and the gate") {
    CHECK(model_f0_profile().value(0.999999 * kV) == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(model_f0_star(0.5 * kV) ==
          doctest::Approx(2.0 * std::cbrt(2.0) - std::cbrt(0.5) + 1.0).epsilon(1e-12));
    std::string detail;
    CHECK(closed_form_gate(&detail));
    CHECK(detail.empty());
}

TEST_CASE("battery data are deterministic in seed and index") {
    RadialFn a = battery_datum(7, 3, 1.0);
    RadialFn b = battery_datum(7, 3, 1.0);
    RadialFn c = battery_datum(8, 3, 1.0);
    for (double r : {0.0, 0.3, 0.9}) CHECK(a(r) == b(r));
    bool differs = false;
    for (double r : {0.0, 0.3, 0.9}) differs = differs || a(r) != c(r);
    CHECK(differs);
}

TEST_CASE("gradient estimate case: model datum and zero datum") {
    VerificationCase c = small_model_case();
    VerificationReport rep = verify_gradient_estimate(c);
    CHECK(rep.pass);
    CHECK(std::isfinite(rep.empirical_C));
    CHECK(rep.empirical_C > 0.0);
    CHECK(rep.empirical_C < 10.0);  // the two-term bound dominates the flat profile
    CHECK(rep.refinement_drift <= 0.10);
    CHECK(rep.ratio_curve.size() == 60);

    VerificationCase z = small_model_case();
    z.problem.f = RadialFn::constant(0.0);
    VerificationReport zrep = verify_gradient_estimate(z);
    CHECK(zrep.empirical_C == 0.0);
    CHECK(zrep.pass);
}

TEST_CASE("sharp example: two-sided bounds plus the closed-form identity") {
    VerificationCase c = small_model_case();
    c.claim = Claim::kSharpExample;
    c.problem.mesh.nodes = 800;
    VerificationReport rep = verify_sharp_example(c);
    CHECK(rep.pass);
    CHECK(std::isfinite(rep.empirical_C));

    VerificationCase wrong = c;
    wrong.problem.f = RadialFn::f1();
    CHECK_FALSE(verify_sharp_example(wrong).pass);
}

TEST_CASE("log-bound counterexample: ratio blows past 100x") {
    VerificationCase c = small_model_case();
    c.claim = Claim::kLogBoundCounterexample;
    c.problem.V = RadialFn::constant(0.0);
    c.problem.f = RadialFn::f1();
    c.problem.mesh.nodes = 1500;
    VerificationReport rep = verify_log_bound_counterexample(c);
    CHECK(rep.pass);
    CHECK(rep.empirical_C >= 100.0);
}

TEST_CASE("Lorentz-scale cases run and admissibility gates fire") {
    for (int which = 1; which <= 8; ++which) {
        VerificationCase c = small_model_case();
        c.claim = Claim::kLorentzCase;
        c.lorentz_case = which;
        c.battery_random = 2;
        c.seed = 40 + static_cast<std::uint64_t>(which);
        c.params.p = which == 5 ? 2.0 : 1.2;
        c.params.q = which >= 7 ? 4.0 : 2.0;
        c.params.k = which == 6 ? 2.0 : 1.0;
        if (which >= 5) c.problem.f = RadialFn::constant(1.0);
        VerificationReport rep = verify_lorentz_scale_case(c);
        CHECK(rep.pass);
        CHECK(std::isfinite(rep.empirical_C));
        CHECK(rep.empirical_C > 0.0);
    }

    VerificationCase bad = small_model_case();
    bad.claim = Claim::kLorentzCase;
    bad.lorentz_case = 3;
    bad.params.q = 3.0;  // case (iii) needs q < n
    CHECK_THROWS_AS(verify_lorentz_scale_case(bad), std::domain_error);
    bad.lorentz_case = 1;
    bad.params.p = 1.6;  // case (i) needs p < n/(n-1)
    CHECK_THROWS_AS(verify_lorentz_scale_case(bad), std::domain_error);
}

TEST_CASE("sup bound and L1 stability cases") {
    VerificationCase c = small_model_case();
    c.claim = Claim::kGradientSupBound;
    c.problem.f = RadialFn::constant(1.0);
    c.battery_random = 3;
    VerificationReport rep = verify_gradient_sup_bound(c);
    CHECK(rep.pass);

    VerificationCase s = small_model_case();
    s.claim = Claim::kL1Stability;
    s.pair_g = RadialFn::constant(0.0);
    s.has_pair = true;
    s.battery_random = 2;
    VerificationReport srep = verify_l1_stability(s);
    CHECK(srep.pass);
    CHECK(std::isfinite(srep.empirical_C));

    // Swapping the pair leaves the ratio unchanged (both sides symmetric).
    VerificationCase swapped = s;
    swapped.pair_g = s.problem.f;
    swapped.problem.f = RadialFn::constant(0.0);
    swapped.battery_random = 0;
    s.battery_random = 0;
    CHECK(verify_l1_stability(swapped).empirical_C ==
          doctest::Approx(verify_l1_stability(s).empirical_C).epsilon(1e-12));

    VerificationCase same = s;
    same.pair_g = same.problem.f;
    CHECK_THROWS_AS(verify_l1_stability(same), std::domain_error);
}

TEST_CASE("batch runner: files, exit codes, determinism") {
    const std::string config = write_temp("rearr_batch.json", R"json({
      "schema": 1,
      "cases": [
        {
          "id": "mini-thm11",
          "claim": "thm1.1",
          "seed": 9,
          "s_grid": {"count": 40, "lo_frac": 1e-3, "hi_frac": 0.999},
          "problem": {
            "n": 3, "R": 1.0, "bc": "dirichlet",
            "V": {"kind": "constant", "params": [1.0]},
            "f": {"kind": "f0", "params": []},
            "mesh": {"nodes": 400, "gamma": 1.5}
          }
        }
      ]
    })json");
    const auto dir1 = std::filesystem::temp_directory_path() / "rearr_reports1";
    const auto dir2 = std::filesystem::temp_directory_path() / "rearr_reports2";
    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);

    BatchResult run1 = run_batch(config, dir1.string());
    CHECK(run1.exit_code == 0);
    REQUIRE(run1.reports.size() == 1);
    CHECK(run1.reports[0].pass);
    CHECK(std::filesystem::exists(dir1 / "mini-thm11.json"));
    CHECK(std::filesystem::exists(dir1 / "summary.csv"));

    BatchResult run2 = run_batch(config, dir2.string());
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    CHECK(slurp(dir1 / "mini-thm11.json") == slurp(dir2 / "mini-thm11.json"));
    CHECK(slurp(dir1 / "summary.csv") == slurp(dir2 / "summary.csv"));

    std::string summary = slurp(dir1 / "summary.csv");
    CHECK(summary.rfind("id,claim,empirical_C,drift,verdict", 0) == 0);
    CHECK(summary.find("mini-thm11,thm1.1,") != std::string::npos);
    CHECK(summary.find(",pass") != std::string::npos);
}

TEST_CASE("batch runner: config errors") {
    // Unparseable JSON.
    const std::string broken = write_temp("rearr_broken.json", "{ not json");
    CHECK(run_batch(broken).exit_code == 2);

    // Duplicate case ids.
    const std::string dup = write_temp("rearr_dup.json", R"json({
      "cases": [
        {"id": "a", "claim": "thm1.1"},
        {"id": "a", "claim": "prop3.1"}
      ]
    })json");
    BatchResult res = run_batch(dup);
    CHECK(res.exit_code == 2);
    CHECK(res.error.find("duplicate") != std::string::npos);

    // Empty case list: success with a bare summary.
    const std::string empty = write_temp("rearr_empty.json", R"json({"cases": []})json");
    const auto dir = std::filesystem::temp_directory_path() / "rearr_reports_empty";
    std::filesystem::remove_all(dir);
    BatchResult ok = run_batch(empty, dir.string());
    CHECK(ok.exit_code == 0);
    CHECK(ok.reports.empty());
    CHECK(std::filesystem::exists(dir / "summary.csv"));

    // Missing file.
    CHECK(run_batch("/nonexistent/config.json").exit_code == 2);
}

TEST_CASE("case failures are reported but still produce files") {
    const std::string config = write_temp("rearr_fail.json", R"json({
      "cases": [
        {
          "id": "bad-exponent",
          "claim": "thm1.2-case(iii)",
          "params": {"q": 5.0},
          "problem": {
            "n": 3, "R": 1.0, "bc": "dirichlet",
            "V": {"kind": "constant", "params": [1.0]},
            "f": {"kind": "constant", "params": [1.0]},
            "mesh": {"nodes": 200, "gamma": 1.5}
          }
        }
      ]
    })json");
    const auto dir = std::filesystem::temp_directory_path() / "rearr_reports_fail";
    std::filesystem::remove_all(dir);
    BatchResult res = run_batch(config, dir.string());
    CHECK(res.exit_code == 1);
    REQUIRE(res.reports.size() == 1);
    CHECK_FALSE(res.reports[0].pass);
    CHECK(res.reports[0].note.find("error:") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "bad-exponent.json"));
}

TEST_CASE("report json carries the schema header and provenance") {
    VerificationReport rep;
    rep.id = "x";
    rep.claim = "thm1.1";
    rep.empirical_C = 1.5;
    rep.pass = true;
    rep.provenance = 0xdeadbeefULL;
    const std::string text = report_to_json(rep);
    CHECK(text.find("\"schema\": 1") != std::string::npos);
    CHECK(text.find("00000000deadbeef") != std::string::npos);
    CHECK(text.find("\"verdict\": \"pass\"") != std::string::npos);
}
