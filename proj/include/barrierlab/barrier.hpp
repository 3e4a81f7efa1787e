#pragma once

#include "barrierlab/moments.hpp"
#include "barrierlab/rng.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace barrierlab::barrier {

using geom::GeomOptions;
using geom::Polytope;

// Value, gradient and Hessian of phi(x) = log Vol(polar(K, x)) at an interior
// point, assembled from the polar body's volume, centroid and covariance.
template <class T>
struct BarrierEval {
    double phi = 0;
    Vec<T> grad;
    Mat<T> hess;
    Vec<T> at;
};

template <class T>
struct DirectionalDerivatives {
    T d1, d2, d3;
    int dim = 0;
    moments::MarginalMoments<T> marginal;
};

struct CertViolation {
    Vec<double> x, h;
    double r1, r3;
};

struct CertReport {
    double max_r1 = 0;
    double max_r3 = 0;
    long samples = 0;
    double slack = 0;
    std::vector<CertViolation> violations;
    bool passed() const { return violations.empty(); }
};

struct CertifyOptions {
    long n_points = 100;
    int n_dirs = 10;
    std::uint64_t seed = kDefaultSeed;
    double slack = 1e-8; // 0 in exact mode
    bool parallel = true;
};

template <class T>
T polar_volume(const Polytope<T>& K, const Vec<T>& x, const GeomOptions<T>& opt = {}) {
    return geom::volume(geom::polar_body(K, x, opt), opt);
}

template <class T>
double barrier_value(const Polytope<T>& K, const Vec<T>& x, const GeomOptions<T>& opt = {}) {
    return std::log(to_double(polar_volume(K, x, opt)));
}

template <class T>
BarrierEval<T> barrier_eval(const Polytope<T>& K, const Vec<T>& x, const GeomOptions<T>& opt = {}) {
    const int n = K.dim;
    auto polar = geom::polar_body(K, x, opt);
    auto bm = moments::body_moments(geom::triangulate(polar, opt), n);
    const T np1 = T(n + 1), np2 = T(n + 2);

    BarrierEval<T> ev;
    ev.at = x;
    ev.phi = std::log(to_double(bm.vol));
    Vec<T> c(n);
    for (int i = 0; i < n; ++i) c[i] = bm.m1[i] / bm.vol;
    ev.grad.assign(n, T(0));
    for (int i = 0; i < n; ++i) ev.grad[i] = np1 * c[i];
    ev.hess = Mat<T>(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            T cov = bm.m2(a, b) / bm.vol - c[a] * c[b];
            ev.hess(a, b) = np1 * np2 * cov + np1 * c[a] * c[b];
        }
    return ev;
}

// Directional derivatives along h from the marginal moments of the polar
// {y : y.(z-x) <= 1}, with p the marginal of y.h on that set:
//   D phi   = (n+1) mu1
//   D2 phi  = (n+1)(n+2) mu2^2 + (n+1) mu1^2
//   D3 phi  = (n+1)(n+2)(n+3) mu3^3 + 6(n+1)(n+2) mu2^2 mu1 + 2(n+1) mu1^3
// The odd orders carry the orientation of this polar; reflecting the polar
// through the origin flips them. Validated against central differences of
// the barrier value.
template <class T>
DirectionalDerivatives<T> derivatives_from_marginal(const moments::MarginalMoments<T>& m, int n) {
    const T np1 = T(n + 1), np2 = T(n + 2), np3 = T(n + 3);
    DirectionalDerivatives<T> d;
    d.dim = n;
    d.marginal = m;
    d.d1 = np1 * m.mu1;
    d.d2 = np1 * np2 * m.mu2sq + np1 * m.mu1 * m.mu1;
    d.d3 = np1 * np2 * np3 * m.mu3cu + T(6) * np1 * np2 * m.mu2sq * m.mu1 +
           T(2) * np1 * m.mu1 * m.mu1 * m.mu1;
    return d;
}

template <class T>
DirectionalDerivatives<T> directional_derivatives(const Polytope<T>& K, const Vec<T>& x,
                                                  const Vec<T>& h,
                                                  const GeomOptions<T>& opt = {}) {
    if (norm_inf(h) == T(0)) throw ZeroDirection("direction must be nonzero");
    auto polar = geom::polar_body(K, x, opt);
    return derivatives_from_marginal(moments::marginal_moments(polar, h, opt), K.dim);
}

// r1 = |D phi| / sqrt(n D2 phi), r3 = |D3 phi| / (2 (D2 phi)^{3/2})
template <class T>
std::pair<double, double> concordance_ratios(const DirectionalDerivatives<T>& d) {
    double d1 = to_double(d.d1), d2 = to_double(d.d2), d3 = to_double(d.d3);
    double r1 = std::fabs(d1) / std::sqrt(static_cast<double>(d.dim) * d2);
    double r3 = std::fabs(d3) / (2.0 * std::pow(d2, 1.5));
    return {r1, r3};
}

namespace detail {

template <class T>
bool violates_r1(const DirectionalDerivatives<T>& d, double slack) {
    if constexpr (ScalarTraits<T>::exact) {
        if (slack == 0.0) return d.d1 * d.d1 > T(d.dim) * d.d2;
    }
    return concordance_ratios(d).first > 1.0 + slack;
}

template <class T>
bool violates_r3(const DirectionalDerivatives<T>& d, double slack) {
    if constexpr (ScalarTraits<T>::exact) {
        if (slack == 0.0) return d.d3 * d.d3 > T(4) * d.d2 * d.d2 * d.d2;
    }
    return concordance_ratios(d).second > 1.0 + slack;
}

} // namespace detail

// Sample interior points (rejection in the bounding box, a fraction pushed
// toward random vertices with weights 0.5 / 0.9 / 0.99) and unit directions,
// and record the self-concordance ratios. All randomness is drawn up front so
// the report does not depend on thread scheduling.
template <class T>
CertReport certify_self_concordance(const Polytope<T>& K, const CertifyOptions& copt = {},
                                    const GeomOptions<T>& gopt = {}) {
    Polytope<T> body = K;
    geom::ensure_halfspaces(body, gopt);
    geom::ensure_vertices(body, gopt);
    const int n = body.dim;
    auto [lo, hi] = geom::bounding_box(body);

    Rng rng(copt.seed);
    const double push_weights[4] = {0.0, 0.5, 0.9, 0.99};

    std::vector<Vec<T>> points;
    points.reserve(copt.n_points);
    long attempts = 0;
    while (static_cast<long>(points.size()) < copt.n_points) {
        Vec<T> x(n);
        for (int i = 0; i < n; ++i)
            x[i] = ScalarTraits<T>::from_double(rng.uniform(to_double(lo[i]), to_double(hi[i])));
        ++attempts;
        if (attempts > 1000 && points.size() * 1000 < static_cast<std::size_t>(attempts))
            throw SamplingFailure("interior rejection rate exceeds 0.999");
        if (!geom::is_interior(body, x, gopt)) continue;
        double w = push_weights[points.size() % 4];
        if (w > 0.0) {
            const auto& v = body.vertices[rng.index(body.vertices.size())];
            Vec<T> pushed(n);
            const T tw = ScalarTraits<T>::from_double(w);
            for (int i = 0; i < n; ++i) pushed[i] = (T(1) - tw) * x[i] + tw * v[i];
            if (geom::is_interior(body, pushed, gopt)) x = std::move(pushed);
        }
        points.push_back(std::move(x));
    }

    std::vector<Vec<T>> dirs(static_cast<std::size_t>(copt.n_points) * copt.n_dirs);
    for (auto& h : dirs) {
        auto hd = rng.unit_vector(n);
        h.resize(n);
        for (int i = 0; i < n; ++i) h[i] = ScalarTraits<T>::from_double(hd[i]);
    }

    struct Slot {
        double r1 = 0, r3 = 0;
        bool viol1 = false, viol3 = false;
    };
    std::vector<Slot> slots(dirs.size());
    std::vector<std::string> errors(points.size());

#pragma omp parallel for schedule(dynamic) if (copt.parallel)
    for (long long pi = 0; pi < static_cast<long long>(points.size()); ++pi) {
        try {
            auto polar = geom::polar_body(body, points[pi], gopt);
            auto simplices = geom::triangulate(polar, gopt);
            for (int di = 0; di < copt.n_dirs; ++di) {
                const std::size_t slot = static_cast<std::size_t>(pi) * copt.n_dirs + di;
                auto dd = derivatives_from_marginal(
                    moments::marginal_moments(simplices, dirs[slot]), n);
                auto [r1, r3] = concordance_ratios(dd);
                slots[slot] = {r1, r3, detail::violates_r1(dd, copt.slack),
                               detail::violates_r3(dd, copt.slack)};
            }
        } catch (const std::exception& e) {
            errors[pi] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty()) throw Error("certifier sample failed: " + e);

    CertReport rep;
    rep.slack = copt.slack;
    rep.samples = static_cast<long>(slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) {
        rep.max_r1 = std::max(rep.max_r1, slots[s].r1);
        rep.max_r3 = std::max(rep.max_r3, slots[s].r3);
        if (slots[s].viol1 || slots[s].viol3) {
            Vec<double> xd(n), hd(n);
            for (int i = 0; i < n; ++i) {
                xd[i] = to_double(points[s / copt.n_dirs][i]);
                hd[i] = to_double(dirs[s][i]);
            }
            rep.violations.push_back({xd, hd, slots[s].r1, slots[s].r3});
        }
    }
    return rep;
}

// --- the scalar profile bounding D3/ D2^{3/2} in the concordance proof ---

inline double ell_value(double c_n, double t) {
    return (4.0 * c_n - 6.0 * t - 2.0 * t * t * t) / std::pow(1.0 + t * t, 1.5);
}

struct EllProfile {
    int n = 0;
    double c_n = 0;
    double stat_lo = 0, stat_hi = 0;       // -1/sqrt(n), sqrt(n)
    double ell_stat_lo = 0, ell_stat_hi = 0;
    double limit_neg_inf = 2.0, limit_pos_inf = -2.0;
    double max_value = 0;    // max of the four candidates
    double grid_max = 0;     // max over the scan grid
    double grid_argmax = 0;
};

inline EllProfile ell_profile(int n, long grid_points = 100000, double lo = -1e3,
                              double hi = 1e3) {
    EllProfile p;
    p.n = n;
    const double sn = std::sqrt(static_cast<double>(n));
    p.c_n = (n - 1) / (2.0 * sn);
    p.stat_lo = -1.0 / sn;
    p.stat_hi = sn;
    p.ell_stat_lo = ell_value(p.c_n, p.stat_lo);
    p.ell_stat_hi = ell_value(p.c_n, p.stat_hi);
    p.max_value = std::max({p.limit_neg_inf, p.ell_stat_lo, p.ell_stat_hi, p.limit_pos_inf});
    p.grid_max = -1e300;
    for (long i = 0; i < grid_points; ++i) {
        double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
        double v = ell_value(p.c_n, t);
        if (v > p.grid_max) {
            p.grid_max = v;
            p.grid_argmax = t;
        }
    }
    return p;
}

} // namespace barrierlab::barrier
