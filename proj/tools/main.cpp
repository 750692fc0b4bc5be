// Command-line front end: rearrangements, norms, radial solves, verification
// batches, Hardy-condition evaluation and reverse-Holder scans.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rearr/hardy.hpp"
#include "rearr/lorentz.hpp"
#include "rearr/radial_solver.hpp"
#include "rearr/rearrangement.hpp"
#include "rearr/reverse_holder.hpp"
#include "rearr/verify.hpp"

namespace {

using nlohmann::ordered_json;

// "L3,1" / "L3,inf" / "Linf,inf" / "LZ3,2,-1"
struct SpaceSpec {
    bool zygmund = false;
    double q = 2.0, s = 2.0, beta = 0.0;
};

double parse_exponent(const std::string& tok) {
    if (tok == "inf") return std::numeric_limits<double>::infinity();
    return std::stod(tok);
}

SpaceSpec parse_space(std::string spec) {
    SpaceSpec out;
    if (spec.rfind("LZ", 0) == 0) {
        out.zygmund = true;
        spec = spec.substr(2);
    } else if (spec.rfind('L', 0) == 0) {
        spec = spec.substr(1);
    } else {
        throw std::runtime_error("space spec must start with L or LZ");
    }
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (out.zygmund) {
        if (parts.size() != 3) throw std::runtime_error("LZ spec needs q,k,beta");
        out.q = parse_exponent(parts[0]);
        out.s = parse_exponent(parts[1]);
        out.beta = std::stod(parts[2]);
    } else {
        if (parts.size() == 1) parts.push_back(parts[0]);  // Lq means Lq,q
        if (parts.size() != 2) throw std::runtime_error("L spec needs q[,s]");
        out.q = parse_exponent(parts[0]);
        out.s = parse_exponent(parts[1]);
    }
    return out;
}

rearr::HardyWeights parse_hardy_config(std::istream& is) {
    rearr::HardyWeights hw;
    double w_coef = 1.0, w_se = 0.0, w_le = 0.0;
    double v_coef = 1.0, v_se = 0.0, v_le = 0.0;
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const double val = std::stod(trim(line.substr(eq + 1)));
        if (key == "omega") hw.omega = val;
        else if (key == "p") hw.p = val;
        else if (key == "q") hw.q = val;
        else if (key == "p0") hw.p0 = val;
        else if (key == "p1") hw.p1 = val;
        else if (key == "w.coef") w_coef = val;
        else if (key == "w.s_expo") w_se = val;
        else if (key == "w.log_expo") w_le = val;
        else if (key == "v.coef") v_coef = val;
        else if (key == "v.s_expo") v_se = val;
        else if (key == "v.log_expo") v_le = val;
        else throw std::runtime_error("hardy config: unknown key '" + key + "'");
    }
    hw.w = rearr::Weight::power_log(w_coef, w_se, w_le);
    hw.v = rearr::Weight::power_log(v_coef, v_se, v_le);
    return hw;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rearrangement calculus, Lorentz norms and radial Schrodinger verification"};
    app.require_subcommand(1);

    std::string input, output, space_spec, cond_token, potential_spec, output_dir;
    bool input_is_profile = false;
    int grid = 512, trials = 200, n_dim = 3;
    std::uint64_t seed = 1;
    double q_value = 3.0;
    bool refined = false;

    auto* cmd_rearrange = app.add_subcommand("rearrange", "decreasing rearrangement of a grid csv");
    cmd_rearrange->add_option("csv", input, "grid function csv (measure,value)")->required();
    cmd_rearrange->add_option("--out", output, "output profile csv (stdout by default)");

    auto* cmd_norm = app.add_subcommand("norm", "Lorentz(-Zygmund) quasi-norm of a csv");
    cmd_norm->add_option("--space", space_spec, "L<q>,<s> or LZ<q>,<k>,<beta>; inf allowed")
        ->required();
    cmd_norm->add_option("csv", input, "input csv")->required();
    cmd_norm->add_flag("--profile", input_is_profile, "input is a profile csv, not a grid csv");

    auto* cmd_solve = app.add_subcommand("solve", "solve a radial problem config");
    cmd_solve->add_option("config", input, "key = value problem config")->required();
    cmd_solve->add_option("--out", output, "solution csv (stdout by default)");

    auto* cmd_verify = app.add_subcommand("verify", "run a JSON verification batch");
    cmd_verify->add_option("config", input, "batch config json")->required();
    cmd_verify->add_option("--output-dir", output_dir, "overrides the config output dir");

    auto* cmd_hardy = app.add_subcommand("hardy", "evaluate a weighted Hardy condition");
    cmd_hardy->add_option("--cond", cond_token, "condition id: 4.3, 4.4, 4.5 or 4.6")->required();
    cmd_hardy->add_option("config", input, "key = value weight config")->required();
    cmd_hardy->add_option("--grid", grid, "log grid size (>= 64)");
    cmd_hardy->add_option("--trials", trials, "probe trials");
    cmd_hardy->add_option("--seed", seed, "probe seed");
    cmd_hardy->add_option("--n", n_dim, "dimension (>= 3)");

    auto* cmd_rh = app.add_subcommand("rh", "reverse-Holder constant scan for a potential");
    cmd_rh->add_option("--potential", potential_spec, "constant:c | abs-power:[c,]g | poly-power:a")
        ->required();
    cmd_rh->add_option("--q", q_value, "exponent q > 1 (inf allowed)")->required();
    cmd_rh->add_flag("--refined", refined, "use the doubled ball family");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_rearrange) {
            std::ifstream in(input);
            if (!in) throw std::runtime_error("cannot open " + input);
            rearr::GridFunction g = rearr::read_grid_csv(in);
            std::ofstream file;
            rearr::write_profile_csv(open_output(file, output), rearr::decreasing_rearrangement(g));
        } else if (*cmd_norm) {
            std::ifstream in(input);
            if (!in) throw std::runtime_error("cannot open " + input);
            rearr::Profile p = input_is_profile
                                   ? rearr::read_profile_csv(in)
                                   : rearr::decreasing_rearrangement(rearr::read_grid_csv(in));
            const SpaceSpec sp = parse_space(space_spec);
            const double norm =
                sp.zygmund
                    ? rearr::lorentz_zygmund_quasinorm(
                          p, rearr::LorentzZygmundExponents(sp.q, sp.s, sp.beta))
                    : rearr::lorentz_quasinorm(p, rearr::LorentzExponents(sp.q, sp.s));
            std::printf("%.12g\n", norm);
        } else if (*cmd_solve) {
            std::ifstream in(input);
            if (!in) throw std::runtime_error("cannot open " + input);
            rearr::RadialProblem prob = rearr::parse_problem_config(in);
            rearr::RadialSolution sol = rearr::solve_radial(prob);
            std::ofstream file;
            rearr::write_solution_csv(open_output(file, output), sol);
        } else if (*cmd_verify) {
            rearr::BatchResult res = rearr::run_batch(input, output_dir);
            if (!res.error.empty()) std::cerr << res.error << "\n";
            for (const auto& rep : res.reports)
                std::printf("%-28s %-22s C=%-12.6g drift=%-10.4g %s\n", rep.id.c_str(),
                            rep.claim.c_str(), rep.empirical_C, rep.refinement_drift,
                            rep.pass ? "pass" : "FAIL");
            return res.exit_code;
        } else if (*cmd_hardy) {
            std::ifstream in(input);
            if (!in) throw std::runtime_error("cannot open " + input);
            rearr::HardyWeights hw = parse_hardy_config(in);
            const rearr::HardyCondition cond = rearr::parse_hardy_condition(cond_token);
            rearr::HardyProbeReport rep =
                rearr::hardy_inequality_probe(cond, hw, n_dim, trials, seed);
            ordered_json j;
            j["condition"] = rearr::hardy_condition_token(cond);
            j["weights"] = ordered_json{
                {"w", {{"coef", hw.w.coef}, {"s_expo", hw.w.s_expo}, {"log_expo", hw.w.log_expo}}},
                {"v", {{"coef", hw.v.coef}, {"s_expo", hw.v.s_expo}, {"log_expo", hw.v.log_expo}}},
                {"omega", hw.omega},
                {"p", hw.p},
                {"q", hw.q},
                {"p0", hw.p0},
                {"p1", hw.p1}};
            j["sup_estimate"] = std::isfinite(rep.sup_estimate)
                                    ? ordered_json(rep.sup_estimate)
                                    : ordered_json("inf");
            j["max_ratio"] = rep.max_ratio;
            j["trials"] = rep.trials;
            j["seed"] = rep.seed;
            std::cout << j.dump(2) << "\n";
        } else if (*cmd_rh) {
            rearr::Potential pot = rearr::Potential::parse(potential_spec);
            rearr::BallFamily family;
            if (refined) family = family.refined();
            rearr::RhEstimate est = rearr::rh_constant_estimate(pot, q_value, family);
            ordered_json j;
            j["potential"] = pot.describe();
            j["q"] = std::isfinite(q_value) ? ordered_json(q_value) : ordered_json("inf");
            j["family"] = ordered_json{{"center_grid", family.center_grid},
                                       {"center_extent", family.center_extent},
                                       {"radii", family.radii},
                                       {"r_min", family.r_min},
                                       {"r_max", family.r_max}};
            j["max_quotient"] = std::isfinite(est.max_quotient)
                                    ? ordered_json(est.max_quotient)
                                    : ordered_json("inf");
            j["argmax_ball"] = ordered_json{
                {"center", {est.argmax.center[0], est.argmax.center[1], est.argmax.center[2]}},
                {"radius", est.argmax.radius}};
            j["balls_scanned"] = est.balls_scanned;
            j["bound_kind"] = "family maximum, lower bound for the class constant";
            std::cout << j.dump(2) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
