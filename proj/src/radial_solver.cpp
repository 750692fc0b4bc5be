#include "rearr/radial_solver.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rearr/quadrature.hpp"
#include "rearr/rearrangement.hpp"

namespace rearr {

RadialFn RadialFn::constant(double c) { return {"constant", {c}, nullptr}; }

RadialFn RadialFn::power(double coef, double expo) { return {"power", {coef, expo}, nullptr}; }

RadialFn RadialFn::f0() { return {"f0", {}, nullptr}; }

RadialFn RadialFn::f1() { return {"f1", {}, nullptr}; }

RadialFn RadialFn::callable(std::function<double(double)> fn, std::string name) {
    RadialFn r;
    r.kind = std::move(name);
    r.params.clear();
    r.custom = std::move(fn);
    return r;
}

double RadialFn::operator()(double r) const {
    if (custom) return custom(r);
    if (kind == "constant") return params.at(0);
    if (kind == "power") {
        if (r == 0.0 && params.at(1) < 0.0) return 0.0;  // pointwise convention at the origin
        return params.at(0) * std::pow(r, params.at(1));
    }
    if (kind == "f0") return r == 0.0 ? 0.0 : r - 1.0 - 2.0 / r;
    if (kind == "f1") return r == 0.0 ? 0.0 : -2.0 / r;
    throw std::domain_error("radial fn: unknown kind '" + kind + "'");
}

double RadialProblem::domain_measure() const { return ball_volume(n, R); }

namespace {

// Thomas elimination for a tridiagonal system; diag/rhs are consumed.
std::vector<double> solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                                      std::vector<double> upper, std::vector<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0) throw std::runtime_error("radial solve: singular pivot");
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    std::vector<double> x(n);
    if (diag[n - 1] == 0.0) throw std::runtime_error("radial solve: singular pivot");
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
    return x;
}

std::vector<double> graded_nodes(double R, std::size_t N, double gamma) {
    std::vector<double> r(N + 1);
    for (std::size_t i = 0; i <= N; ++i) r[i] = R * std::pow(double(i) / double(N), gamma);
    return r;
}

}  // namespace

RadialSolution solve_radial(const RadialProblem& p) {
    if (p.n < 3) throw std::domain_error("solve_radial: n must be >= 3");
    if (!(p.R > 0.0)) throw std::domain_error("solve_radial: R must be positive");
    if (p.mesh.nodes < 8) throw std::domain_error("solve_radial: mesh too coarse");
    if (!(p.mesh.gamma >= 1.0)) throw std::domain_error("solve_radial: grading must be >= 1");

    const std::size_t N = p.mesh.nodes;
    const int n = p.n;
    std::vector<double> r = graded_nodes(p.R, N, p.mesh.gamma);

    std::vector<double> Vv(N + 1), fv(N + 1);
    bool v_positive = false;
    for (std::size_t i = 0; i <= N; ++i) {
        Vv[i] = p.V(r[i]);
        fv[i] = p.f(r[i]);
        if (Vv[i] < 0.0) throw std::domain_error("solve_radial: potential must be nonnegative");
        if (!std::isfinite(Vv[i])) throw std::domain_error("solve_radial: non-finite V sample");
        if (!std::isfinite(fv[i])) throw std::domain_error("solve_radial: non-finite f sample");
        if (Vv[i] > 0.0) v_positive = true;
    }
    if (!v_positive && p.bc == BoundaryCondition::kNeumann)
        throw std::domain_error("solve_radial: Neumann requires V not identically zero");

    std::vector<double> lower(N + 1, 0.0), diag(N + 1, 0.0), upper(N + 1, 0.0), rhs(N + 1, 0.0);

    // r = 0 row: Delta u(0) ~ n u''(0) ~ 2n (u1 - u0)/h0^2.
    const double h0 = r[1] - r[0];
    diag[0] = 2.0 * n / (h0 * h0) + Vv[0];
    upper[0] = -2.0 * n / (h0 * h0);
    rhs[0] = fv[0];

    auto face_area = [&](double rm) { return std::pow(rm, n - 1); };

    for (std::size_t i = 1; i < N; ++i) {
        const double hm = r[i] - r[i - 1];
        const double hp = r[i + 1] - r[i];
        const double am = face_area(0.5 * (r[i - 1] + r[i])) / hm;
        const double ap = face_area(0.5 * (r[i] + r[i + 1])) / hp;
        const double scale = std::pow(r[i], n - 1) * 0.5 * (r[i + 1] - r[i - 1]);
        lower[i] = -am / scale;
        upper[i] = -ap / scale;
        diag[i] = (am + ap) / scale + Vv[i];
        rhs[i] = fv[i];
    }

    if (p.bc == BoundaryCondition::kDirichlet) {
        diag[N] = 1.0;
        rhs[N] = 0.0;
    } else {
        // Mirror ghost r_{N+1} = R + h, u_{N+1} = u_{N-1}: the centered
        // derivative at R is exactly zero.
        const double h = r[N] - r[N - 1];
        const double am = face_area(r[N] - 0.5 * h) / h;
        const double ap = face_area(r[N] + 0.5 * h) / h;
        const double scale = std::pow(r[N], n - 1) * h;
        lower[N] = -(am + ap) / scale;
        diag[N] = (am + ap) / scale + Vv[N];
        rhs[N] = fv[N];
    }

    RadialSolution sol;
    sol.nodes = r;
    sol.dim = n;
    sol.radius = p.R;
    sol.bc = p.bc;
    sol.u = solve_tridiagonal(lower, diag, upper, rhs);

    // Residual in the weighted discrete L2 norm (dual-cell volumes).
    {
        const double area = unit_sphere_area(n);
        double acc = 0.0;
        for (std::size_t i = 0; i <= N; ++i) {
            double res = diag[i] * sol.u[i] - rhs[i];
            if (i > 0) res += lower[i] * sol.u[i - 1];
            if (i < N) res += upper[i] * sol.u[i + 1];
            const double lo = i == 0 ? 0.0 : 0.5 * (r[i - 1] + r[i]);
            const double hi = i == N ? r[N] : 0.5 * (r[i] + r[i + 1]);
            const double cell = area * (std::pow(hi, n) - std::pow(lo, n)) / n;
            acc += cell * res * res;
        }
        sol.residual_norm = std::sqrt(acc);
    }

    // Nodal derivative: three-point one-sided at the ends, central inside;
    // the symmetry and Neumann conditions pin the endpoint values exactly.
    sol.du.assign(N + 1, 0.0);
    for (std::size_t i = 1; i < N; ++i) {
        const double hm = r[i] - r[i - 1];
        const double hp = r[i + 1] - r[i];
        sol.du[i] = -hp / (hm * (hm + hp)) * sol.u[i - 1] +
                    (hp - hm) / (hm * hp) * sol.u[i] +
                    hm / (hp * (hm + hp)) * sol.u[i + 1];
    }
    sol.du[0] = 0.0;
    if (p.bc == BoundaryCondition::kNeumann) {
        sol.du[N] = 0.0;
    } else {
        const double h1 = r[N] - r[N - 1];
        const double h2 = r[N - 1] - r[N - 2];
        sol.du[N] = (2.0 * h1 + h2) / (h1 * (h1 + h2)) * sol.u[N] -
                    (h1 + h2) / (h1 * h2) * sol.u[N - 1] +
                    h1 / (h2 * (h1 + h2)) * sol.u[N - 2];
    }
    return sol;
}

GridFunction gradient_cells(const RadialSolution& sol) {
    const std::size_t N = sol.nodes.size() - 1;
    const double area = unit_sphere_area(sol.dim);
    std::vector<GridFunction::Cell> cells;
    cells.reserve(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double measure =
            area * (std::pow(sol.nodes[i + 1], sol.dim) - std::pow(sol.nodes[i], sol.dim)) /
            sol.dim;
        // The difference quotient is the second-order derivative at the shell
        // midpoint; the shell measure is exact.
        const double slope = (sol.u[i + 1] - sol.u[i]) / (sol.nodes[i + 1] - sol.nodes[i]);
        cells.push_back({measure, std::abs(slope)});
    }
    return GridFunction(std::move(cells), "gradient");
}

Profile gradient_rearrangement(const RadialSolution& sol) {
    return decreasing_rearrangement(gradient_cells(sol));
}

GridFunction nodal_cells(const RadialSolution& sol, const std::vector<double>& values) {
    if (values.size() != sol.nodes.size())
        throw std::invalid_argument("nodal_cells: size mismatch");
    const std::size_t N = sol.nodes.size() - 1;
    const double area = unit_sphere_area(sol.dim);
    std::vector<GridFunction::Cell> cells;
    cells.reserve(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double measure =
            area * (std::pow(sol.nodes[i + 1], sol.dim) - std::pow(sol.nodes[i], sol.dim)) /
            sol.dim;
        cells.push_back({measure, 0.5 * (values[i] + values[i + 1])});
    }
    return GridFunction(std::move(cells));
}

double radial_lp_norm(const std::function<double(double)>& fn, int n, double R, double p) {
    const double area = unit_sphere_area(n);
    auto integrand = [&](double r) {
        return std::pow(std::abs(fn(r)), p) * std::pow(r, n - 1);
    };
    const double v = integrate_graded_zero(integrand, R, 1e-12, 1e-9).value;
    return std::pow(area * v, 1.0 / p);
}

double potential_solve_ratio(const RadialProblem& p, double exponent) {
    if (!(exponent >= 1.0) || exponent > p.n)
        throw std::domain_error("potential_solve_ratio: exponent must lie in [1, n]");
    const double f_norm = radial_lp_norm([&](double r) { return p.f(r); }, p.n, p.R, exponent);
    if (f_norm == 0.0) throw std::domain_error("potential_solve_ratio: f must not vanish");
    RadialSolution sol = solve_radial(p);
    // Trapezoid on the solved mesh for V*u (nodal data only).
    const double area = unit_sphere_area(p.n);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < sol.nodes.size(); ++i) {
        const double r0 = sol.nodes[i], r1 = sol.nodes[i + 1];
        const double g0 = std::pow(std::abs(p.V(r0) * sol.u[i]), exponent) * std::pow(r0, p.n - 1);
        const double g1 =
            std::pow(std::abs(p.V(r1) * sol.u[i + 1]), exponent) * std::pow(r1, p.n - 1);
        acc += 0.5 * (g0 + g1) * (r1 - r0);
    }
    return std::pow(area * acc, 1.0 / exponent) / f_norm;
}

RadialProblem parse_problem_config(std::istream& is) {
    RadialProblem p;
    std::string line;
    std::string v_kind = "constant", f_kind = "constant";
    std::vector<double> v_params{1.0}, f_params{1.0};
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
        const std::string val = trim(line.substr(eq + 1));
        auto parse_list = [](const std::string& s) {
            std::vector<double> out;
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
            return out;
        };
        if (key == "n") p.n = std::stoi(val);
        else if (key == "R") p.R = std::stod(val);
        else if (key == "bc") {
            if (val == "dirichlet") p.bc = BoundaryCondition::kDirichlet;
            else if (val == "neumann") p.bc = BoundaryCondition::kNeumann;
            else throw std::domain_error("config: bc must be dirichlet or neumann");
        } else if (key == "V.kind") v_kind = val;
        else if (key == "V.params") v_params = parse_list(val);
        else if (key == "f.kind") f_kind = val;
        else if (key == "f.params") f_params = parse_list(val);
        else if (key == "mesh.nodes") p.mesh.nodes = static_cast<std::size_t>(std::stoul(val));
        else if (key == "mesh.gamma") p.mesh.gamma = std::stod(val);
        else throw std::domain_error("config: unknown key '" + key + "'");
    }
    p.V = RadialFn{v_kind, v_params, nullptr};
    p.f = RadialFn{f_kind, f_params, nullptr};
    return p;
}

void write_solution_csv(std::ostream& os, const RadialSolution& sol) {
    os << "r,u,du\n";
    char buf[96];
    for (std::size_t i = 0; i < sol.nodes.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", sol.nodes[i], sol.u[i], sol.du[i]);
        os << buf;
    }
}

}  // namespace rearr
