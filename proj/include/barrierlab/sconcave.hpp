#pragma once

#include "barrierlab/errors.hpp"
#include "barrierlab/moments.hpp"
#include "barrierlab/scalar.hpp"

#include <cmath>
#include <utility>

namespace barrierlab::sconcave {

// Density proportional to (alpha t + beta)^(k-1) on [a, b]; the extremal
// class for the moment inequalities. k = 1 is the uniform family.
template <class T>
struct AffineDistribution {
    T alpha, beta;
    T a, b;
    long k = 1;
};

template <class T>
struct MomentFunctionals {
    double xi = 0;        // |mu3^3 / mu2^3|
    double eta = 0;       // mu1 / mu2
    double phi_ratio = 0; // (raw1)^2 / raw2
};

namespace detail {

template <class T>
T pow_t(const T& base, long e) {
    if constexpr (ScalarTraits<T>::exact) {
        if (e < 0) return T(1) / pow_t(base, -e);
        T r(1), b = base;
        long n = e;
        while (n > 0) {
            if (n & 1) r *= b;
            b *= b;
            n >>= 1;
        }
        return r;
    } else {
        return std::pow(base, static_cast<double>(e));
    }
}

template <class T>
T binom(long n, long r) {
    T num(1), den(1);
    for (long i = 0; i < r; ++i) {
        num *= T(n - i);
        den *= T(i + 1);
    }
    return num / den;
}

template <class T>
T check_tol() {
    if constexpr (ScalarTraits<T>::exact)
        return T(Rational(1, BigInt("1000000000000"))); // 1e-12
    else
        return 1e-9;
}

} // namespace detail

template <class T>
AffineDistribution<T> make_affine(T alpha, T beta, T a, T b, long k) {
    if (k < 1) throw InvalidDensity("k must be a positive integer");
    if (!(a < b)) throw DegenerateSupport("support must be a nondegenerate interval");
    if constexpr (!ScalarTraits<T>::exact) {
        if (b - a < 1e-12 * (1.0 + std::fabs(a) + std::fabs(b)))
            throw DegenerateSupport("support below tolerance");
    }
    T at_a = alpha * a + beta, at_b = alpha * b + beta;
    T tol = detail::check_tol<T>();
    if (at_a < -tol || at_b < -tol)
        throw InvalidDensity("alpha t + beta is negative on the support");
    return {std::move(alpha), std::move(beta), std::move(a), std::move(b), k};
}

template <class T>
AffineDistribution<T> power_law(long k) { // k t^(k-1) on [0,1]
    return make_affine(T(1), T(0), T(0), T(1), k);
}

template <class T>
AffineDistribution<T> uniform01() {
    return make_affine(T(0), T(1), T(0), T(1), 1);
}

// flip about the midpoint of the support
template <class T>
AffineDistribution<T> reflected(const AffineDistribution<T>& d) {
    return make_affine(T(-d.alpha), T(d.beta + d.alpha * (d.a + d.b)), d.a, d.b, d.k);
}

// affine reparameterization onto [0,1]
template <class T>
AffineDistribution<T> rescaled01(const AffineDistribution<T>& d) {
    T w = d.b - d.a;
    return make_affine(T(d.alpha * w), T(d.alpha * d.a + d.beta), T(0), T(1), d.k);
}

// kappa = beta / (b alpha) and gamma = (1 + kappa) / kappa for the canonical
// form (a = 0, alpha > 0, beta > 0)
template <class T>
std::pair<T, T> canonical_params(const AffineDistribution<T>& d) {
    if (!(d.a == T(0)) || !(d.alpha > T(0)) || !(d.beta > T(0)))
        throw InvalidDensity("canonical parameters need a = 0, alpha > 0, beta > 0");
    T kappa = d.beta / (d.b * d.alpha);
    return {kappa, (T(1) + kappa) / kappa};
}

// Exact raw and central moments through the binomial expansion of
// t^j (alpha t + beta)^(k-1); exact in rational mode.
template <class T>
moments::MarginalMoments<T> affine_moments(const AffineDistribution<T>& d) {
    const long k = d.k;
    auto integral = [&](int j) {
        T acc(0);
        for (long i = 0; i <= k - 1; ++i) {
            T c = detail::binom<T>(k - 1, i) * detail::pow_t(d.alpha, i) *
                  detail::pow_t(d.beta, k - 1 - i);
            long e = i + j + 1;
            acc += c * (detail::pow_t(d.b, e) - detail::pow_t(d.a, e)) / T(e);
        }
        return acc;
    };
    T z = integral(0);
    if (!(z > T(0))) throw InvalidDensity("density does not normalize");
    moments::MarginalMoments<T> m;
    m.vol = z;
    m.raw1 = integral(1) / z;
    m.raw2 = integral(2) / z;
    m.raw3 = integral(3) / z;
    m.mu1 = m.raw1;
    m.mu2sq = m.raw2 - m.raw1 * m.raw1;
    m.mu3cu = m.raw3 - T(3) * m.raw1 * m.raw2 + T(2) * m.raw1 * m.raw1 * m.raw1;
    return m;
}

template <class T>
MomentFunctionals<T> functionals(const moments::MarginalMoments<T>& m) {
    MomentFunctionals<T> f;
    double mu2 = std::sqrt(to_double(m.mu2sq));
    f.xi = std::fabs(to_double(m.mu3cu)) / (mu2 * mu2 * mu2);
    f.eta = to_double(m.mu1) / mu2;
    f.phi_ratio = to_double(m.raw1) * to_double(m.raw1) / to_double(m.raw2);
    return f;
}

struct Moment12Result {
    bool holds = false;
    double slack = 0; // k(k+2) mu2^2 - mu1^2
};

// mu1^2 <= k(k+2) mu2^2, requires 0 in the support
template <class T>
Moment12Result check_moment12(const AffineDistribution<T>& d) {
    T tol = detail::check_tol<T>();
    if (d.a > tol || d.b < -tol)
        throw HypothesisViolated("0 must lie in the support");
    auto m = affine_moments(d);
    T kk = T(d.k) * T(d.k + 2);
    T slack = kk * m.mu2sq - m.mu1 * m.mu1;
    return {slack >= -tol, to_double(slack)};
}

struct Moment23Result {
    bool holds = false;
    double xi = 0;
    double bound = 0; // 2 sqrt((k+2)/k) (k-1)/(k+3)
};

// mu3^3 <= bound * mu2^3 (one-sided) and, via reflection symmetry,
// |mu3^3| <= bound * mu2^3. Exact mode compares squares.
template <class T>
Moment23Result check_moment23(const AffineDistribution<T>& d) {
    auto m = affine_moments(d);
    T tol = detail::check_tol<T>();
    if (m.mu2sq <= tol) throw ZeroVariance("second central moment vanishes");
    const long k = d.k;
    Moment23Result r;
    double mu2cu = std::pow(to_double(m.mu2sq), 1.5);
    r.xi = std::fabs(to_double(m.mu3cu)) / mu2cu;
    r.bound = 2.0 * std::sqrt(static_cast<double>(k + 2) / k) * (k - 1) /
              static_cast<double>(k + 3);
    if constexpr (ScalarTraits<T>::exact) {
        // bound^2 = 4 (k+2)(k-1)^2 / (k (k+3)^2) is rational
        T b2 = T(4) * T(k + 2) * T(k - 1) * T(k - 1) / (T(k) * T(k + 3) * T(k + 3));
        r.holds = m.mu3cu * m.mu3cu <= b2 * m.mu2sq * m.mu2sq * m.mu2sq;
    } else {
        double m3 = to_double(m.mu3cu);
        r.holds = (m3 <= r.bound * mu2cu + 1e-9) && (r.xi <= r.bound + 1e-9);
    }
    return r;
}

// A non-increasing density on [0,1] has mean at most 1/2.
template <class T>
bool mean_bound_check(const AffineDistribution<T>& d) {
    auto r = rescaled01(d);
    T tol = detail::check_tol<T>();
    if (r.alpha > tol) throw NotNonIncreasing("density is increasing on its support");
    auto m = affine_moments(r);
    return m.mu1 <= T(1) / T(2) + tol;
}

struct GammaInequalityResult {
    bool holds = false;
    double f0 = 0;
    bool cross_checked = false; // against the two-sided ratio form
};

// f0(gamma) = 2k g^(2k+1) - (k+1) g^(2k) - k^2(k+1) g^(k+2)
//           + 2k(k^2+k-1) g^(k+1) - (k^3+k^2-2) g^k + (k-1), nonnegative on
// gamma >= 1. For gamma > 1 the equivalent two-sided ratio inequality is
// recomputed independently and reconciled.
template <class T>
GammaInequalityResult check_gamma_inequality(const T& gamma, long k) {
    if (k < 2) throw InvalidDensity("gamma inequality needs k >= 2");
    if (gamma < T(1)) throw InvalidDensity("gamma must be >= 1");
    using detail::pow_t;
    const T kk = T(k);
    T f0 = T(2) * kk * pow_t(gamma, 2 * k + 1) - T(k + 1) * pow_t(gamma, 2 * k) -
           kk * kk * T(k + 1) * pow_t(gamma, k + 2) +
           T(2) * kk * (kk * kk + kk - T(1)) * pow_t(gamma, k + 1) -
           (kk * kk * kk + kk * kk - T(2)) * pow_t(gamma, k) + (kk - T(1));

    GammaInequalityResult r;
    r.f0 = to_double(f0);
    T tol = detail::check_tol<T>();
    r.holds = f0 >= -tol;

    if (gamma > T(1)) {
        T gk = pow_t(gamma, k);
        T q1 = (pow_t(gamma, k + 1) - T(1)) / (gk - T(1));
        T q2 = (pow_t(gamma, k + 2) - T(1)) / (gk - T(1));
        T lhs_term = q1 * kk / T(k + 1) - T(1);
        T lhs = T(k + 1) * T(k + 1) * lhs_term * lhs_term;
        T rhs = kk * T(k + 2) * (q2 * kk / T(k + 2) - T(2) * q1 * kk / T(k + 1) + T(1));
        T recon = T(k + 1) * (gk - T(1)) * (gk - T(1)) * (rhs - lhs);
        T scale = T(1) + scalar_abs(f0);
        if (scalar_abs(recon - f0) > tol * scale)
            throw Error("f0 disagrees with the ratio form of the inequality");
        r.cross_checked = true;
        if (!(rhs - lhs >= -tol) != !r.holds)
            throw Error("ratio form and f0 disagree on the verdict");
    }
    return r;
}

} // namespace barrierlab::sconcave
