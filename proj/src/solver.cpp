#include "barrierlab/solver.hpp"

#include <algorithm>
#include <cmath>

namespace barrierlab::solver {

namespace {

struct NewtonStep {
    double lambda = 0;
    Vec<double> next;
};

// one damped Newton step on t c.x + phi(x)
NewtonStep damped_step(const Polytope<double>& K, const Vec<double>& x, double t,
                       const Vec<double>& c, const GeomOptions<double>& gopt) {
    auto ev = barrier::barrier_eval(K, x, gopt);
    const int n = K.dim;
    Vec<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = t * c[i] + ev.grad[i];
    auto dir = solve_linear(ev.hess, g);
    if (!dir) throw Error("Hessian solve failed");
    NewtonStep s;
    s.lambda = std::sqrt(std::max(0.0, dot(g, *dir)));
    s.next = x;
    double damping = 1.0 / (1.0 + s.lambda);
    for (int i = 0; i < n; ++i) s.next[i] -= damping * (*dir)[i];
    return s;
}

} // namespace

Vec<double> analytic_center(const Polytope<double>& K, Vec<double> x0, const SolverOptions& opt,
                            const GeomOptions<double>& gopt) {
    geom::require_interior(K, x0, gopt);
    Vec<double> zero(K.dim, 0.0);
    for (long it = 0; it < opt.max_center_steps; ++it) {
        auto s = damped_step(K, x0, 0.0, zero, gopt);
        if (s.lambda <= 1e-9) return x0;
        if (!geom::is_interior(K, s.next, gopt)) throw NotInterior("centering left the body");
        x0 = std::move(s.next);
    }
    throw MaxIterations("analytic center did not converge");
}

SolveResult solve_lp(const LPProblem& lp, const SolverOptions& opt,
                     const GeomOptions<double>& gopt) {
    Polytope<double> K = lp.body;
    geom::ensure_halfspaces(K, gopt);
    geom::ensure_vertices(K, gopt);
    const int n = K.dim;
    const double cnorm = norm2(lp.cost);
    if (cnorm <= 0) throw InputError("cost vector must be nonzero");
    if (lp.eps <= 0) throw InputError("eps must be positive");

    SolveResult res;
    Vec<double> x = analytic_center(K, geom::vertex_centroid(K), opt, gopt);

    auto [lo, hi] = geom::bounding_box(K);
    double diam = norm2(vsub(hi, lo));
    double t = opt.t0 > 0 ? opt.t0 : 1.0 / (cnorm * diam);
    double theta = opt.theta > 0 ? opt.theta : 1.0 + 1.0 / (8.0 * std::sqrt(double(n)));

    auto record = [&](double lambda) {
        if (opt.record_trace) res.trace.push_back({t, lambda, dot(lp.cost, x), x});
    };

    auto center_to = [&](double tol) {
        for (;;) {
            auto s = damped_step(K, x, t, lp.cost, gopt);
            if (s.lambda <= tol) return s.lambda;
            if (!geom::is_interior(K, s.next, gopt)) throw NotInterior("iterate left the body");
            x = std::move(s.next);
            ++res.newton_steps;
            record(s.lambda);
            if (res.newton_steps > opt.max_newton_steps)
                throw MaxIterations("newton step budget exhausted");
        }
    };

    center_to(opt.center_tol);
    while (double(n) / t > lp.eps) {
        t *= theta;
        auto s = damped_step(K, x, t, lp.cost, gopt);
        if (!geom::is_interior(K, s.next, gopt)) throw NotInterior("iterate left the body");
        x = std::move(s.next);
        ++res.newton_steps;
        record(s.lambda);
        if (res.newton_steps > opt.max_newton_steps)
            throw MaxIterations("newton step budget exhausted");
        if (s.lambda > opt.center_tol) center_to(opt.center_tol);
    }
    center_to(opt.final_center_tol);

    res.x = x;
    res.objective = dot(lp.cost, x);
    res.t_final = t;
    res.gap_bound = double(n) / t;
    return res;
}

double vertex_minimum(const Polytope<double>& K, const Vec<double>& cost,
                      const GeomOptions<double>& gopt) {
    Polytope<double> P = K;
    geom::ensure_vertices(P, gopt);
    double best = dot(cost, P.vertices.front());
    for (const auto& v : P.vertices) best = std::min(best, dot(cost, v));
    return best;
}

} // namespace barrierlab::solver
