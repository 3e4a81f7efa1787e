#pragma once

#include "barrierlab/barrier.hpp"
#include "barrierlab/geometry.hpp"

#include <vector>

namespace barrierlab::solver {

using geom::GeomOptions;
using geom::Polytope;

struct LPProblem {
    Polytope<double> body;
    Vec<double> cost;
    double eps = 1e-6; // target optimality gap
};

struct PathPoint {
    double t = 0;
    double newton_decrement = 0;
    double objective = 0;
    Vec<double> x;
};

struct SolveResult {
    Vec<double> x;
    double objective = 0;
    double gap_bound = 0; // n / t at termination
    double t_final = 0;
    long newton_steps = 0;
    std::vector<PathPoint> trace;
};

struct SolverOptions {
    double t0 = 0;    // 0: choose so that t0 |c| diam ~ 1
    double theta = 0; // 0: short step 1 + 1/(8 sqrt(n))
    double center_tol = 0.125;
    double final_center_tol = 1e-2;
    long max_center_steps = 500;
    long max_newton_steps = 100000;
    bool record_trace = true;
};

// Damped Newton on the barrier alone; converges to the minimizer of phi.
Vec<double> analytic_center(const Polytope<double>& K, Vec<double> x0,
                            const SolverOptions& opt = {}, const GeomOptions<double>& gopt = {});

// Short-step path following for min c.x over K using the universal barrier
// with parameter n: one damped Newton step per t <- theta t update, stopping
// once n / t <= eps and the final iterate is re-centered.
SolveResult solve_lp(const LPProblem& lp, const SolverOptions& opt = {},
                     const GeomOptions<double>& gopt = {});

// brute-force oracle: minimum of c.x over the vertex set
double vertex_minimum(const Polytope<double>& K, const Vec<double>& cost,
                      const GeomOptions<double>& gopt = {});

} // namespace barrierlab::solver
