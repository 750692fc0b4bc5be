#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "rearr/grid_function.hpp"
#include "rearr/profile.hpp"

namespace rearr {

/// Radial function descriptor for problem configs. Built-in shapes:
///   constant  c
///   power     c * r^a          (negative a evaluates to 0 at r = 0, matching
///                               the pointwise convention of the singular
///                               model data below)
///   f0        r - 1 - 2/r  on (0,1], 0 at r = 0  (model Dirichlet datum;
///                               the solution of -Laplace u + u = f0 is r - 1)
///   f1        -2/r, 0 at r = 0 (model Laplace datum with the same solution)
///   custom    arbitrary callable (API only, not parseable from configs)
struct RadialFn {
    std::string kind = "constant";
    std::vector<double> params{1.0};
    std::function<double(double)> custom;

    static RadialFn constant(double c);
    static RadialFn power(double coef, double expo);
    static RadialFn f0();
    static RadialFn f1();
    static RadialFn callable(std::function<double(double)> fn, std::string name = "custom");

    double operator()(double r) const;
};

enum class BoundaryCondition { kDirichlet, kNeumann };

struct MeshSpec {
    std::size_t nodes = 1000;  // interval count; the grid has nodes+1 points
    double gamma = 1.5;        // grading exponent toward r = 0
};

/// -Delta u + V u = f on the ball B(0, R) in R^n, reduced to
/// -(u'' + (n-1)/r u') + V u = f with u'(0) = 0 and the chosen condition at R.
struct RadialProblem {
    int n = 3;
    double R = 1.0;
    RadialFn V = RadialFn::constant(1.0);
    RadialFn f = RadialFn::constant(1.0);
    BoundaryCondition bc = BoundaryCondition::kDirichlet;
    MeshSpec mesh;

    double domain_measure() const;  // |B(0,R)| in R^n
};

struct RadialSolution {
    std::vector<double> nodes;  // increasing grid on [0, R]
    std::vector<double> u;
    std::vector<double> du;     // one-sided stencils at the ends, central inside;
                                // du[0] = 0 by symmetry, du[N] = 0 under Neumann
    double residual_norm = 0.0; // discrete L2 of the assembled system residual
    int dim = 3;
    double radius = 1.0;
    BoundaryCondition bc = BoundaryCondition::kDirichlet;
};

/// Conservative second-order finite differences of (r^{n-1} u')' on the graded
/// mesh r_i = R (i/N)^gamma; the r = 0 row uses the regularized stencil
/// Delta u(0) ~ n u''(0); Neumann closes with a mirror ghost so the discrete
/// centered derivative at R vanishes exactly.
/// Rejects V < 0 anywhere, V identically zero under Neumann (singular system),
/// and non-finite f samples.
RadialSolution solve_radial(const RadialProblem& p);

/// Shell-cell GridFunction of |u'| (difference quotients at shell midpoints,
/// exact shell volumes as measures), then its decreasing rearrangement.
GridFunction gradient_cells(const RadialSolution& sol);
Profile gradient_rearrangement(const RadialSolution& sol);

/// Shell-cell GridFunction of an arbitrary nodal field (values averaged to
/// shell midpoints). Used for medians and norm probes of u itself.
GridFunction nodal_cells(const RadialSolution& sol, const std::vector<double>& values);

/// || V u ||_{L^p} / || f ||_{L^p} by radial quadrature on the solution mesh;
/// finiteness and mesh stability are the testable content. f == 0 is a
/// domain error (the ratio is undefined).
double potential_solve_ratio(const RadialProblem& p, double exponent);

/// L^p norm of a radial callable over the ball, by adaptive quadrature.
double radial_lp_norm(const std::function<double(double)>& fn, int n, double R, double p);

/// Flat key = value config (keys n, R, bc, V.kind, V.params, f.kind,
/// f.params, mesh.nodes, mesh.gamma; '#' comments).
RadialProblem parse_problem_config(std::istream& is);
void write_solution_csv(std::ostream& os, const RadialSolution& sol);

}  // namespace rearr
