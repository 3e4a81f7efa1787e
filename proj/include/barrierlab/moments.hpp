#pragma once

#include "barrierlab/errors.hpp"
#include "barrierlab/geometry.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace barrierlab::moments {

using geom::GeomOptions;
using geom::Polytope;
using geom::Simplex;

// Moments of the scalar y.h under uniform y on a body: raw moments about 0,
// central moments mu1, mu2^2, mu3^3, and the body volume.
template <class T>
struct MarginalMoments {
    T vol;
    T raw1, raw2, raw3;
    T mu1, mu2sq, mu3cu;
};

template <class T>
struct BodyMoments {
    int dim = 0;
    T vol = T(0);
    Vec<T> m1;  // integral of y
    Mat<T> m2;  // integral of y y^T
};

namespace detail {

// Partial sums are accumulated per fixed-size chunk and folded in chunk
// order, so results do not depend on the number of threads.
inline constexpr std::size_t kChunk = 128;

template <class T>
T int_factorial_ratio(int n, int j) {
    // n! j! / (n+j)!
    T num(1), den(1);
    for (int i = 2; i <= j; ++i) num *= T(i);
    for (int i = n + 1; i <= n + j; ++i) den *= T(i);
    return num / den;
}

} // namespace detail

// Exact integral of (y.h)^j over a simplex: Vol(S) * n! j!/(n+j)! * H_j of the
// vertex values t_i = v_i . h, with H_j the complete homogeneous symmetric
// polynomial. Orders 0..3 only; H_j is evaluated through power sums.
template <class T>
T simplex_directional_moment(const Simplex<T>& S, const Vec<T>& h, int j) {
    if (j < 0 || j > 3) throw OrderUnsupported("directional moments support orders 0..3");
    if (S.degenerate) return T(0);
    if (j == 0) return S.volume;
    const int n = static_cast<int>(S.verts.size()) - 1;
    T p1(0), p2(0), p3(0);
    for (const auto& v : S.verts) {
        T t = dot(v, h);
        p1 += t;
        p2 += t * t;
        p3 += t * t * t;
    }
    T hj;
    if (j == 1)
        hj = p1;
    else if (j == 2)
        hj = (p1 * p1 + p2) / T(2);
    else
        hj = (p1 * p1 * p1 + T(3) * p1 * p2 + T(2) * p3) / T(6);
    return S.volume * detail::int_factorial_ratio<T>(n, j) * hj;
}

namespace detail {

template <class T>
std::array<T, 4> raw_sums_range(const std::vector<Simplex<T>>& simplices, const Vec<T>& h,
                                std::size_t begin, std::size_t end) {
    std::array<T, 4> acc{T(0), T(0), T(0), T(0)};
    for (std::size_t i = begin; i < end; ++i)
        for (int j = 0; j <= 3; ++j)
            acc[j] += simplex_directional_moment(simplices[i], h, j);
    return acc;
}

template <class T>
void body_accumulate_range(const std::vector<Simplex<T>>& simplices, int dim,
                           std::size_t begin, std::size_t end, BodyMoments<T>& acc) {
    const T np1 = T(dim + 1), np2 = T(dim + 2);
    for (std::size_t i = begin; i < end; ++i) {
        const auto& s = simplices[i];
        if (s.degenerate) continue;
        acc.vol += s.volume;
        Vec<T> vsum(dim, T(0));
        for (const auto& v : s.verts) vsum = vadd(vsum, v);
        for (int a = 0; a < dim; ++a) acc.m1[a] += s.volume * vsum[a] / np1;
        for (int a = 0; a < dim; ++a)
            for (int b = a; b < dim; ++b) {
                T second(0);
                for (const auto& v : s.verts) second += v[a] * v[b];
                T term = s.volume * (second + vsum[a] * vsum[b]) / (np1 * np2);
                acc.m2(a, b) += term;
            }
    }
}

} // namespace detail

template <class T>
std::array<T, 4> directional_raw_sums_serial(const std::vector<Simplex<T>>& simplices,
                                             const Vec<T>& h) {
    return detail::raw_sums_range(simplices, h, 0, simplices.size());
}

template <class T>
std::array<T, 4> directional_raw_sums(const std::vector<Simplex<T>>& simplices, const Vec<T>& h) {
    const std::size_t n = simplices.size();
    const std::size_t nchunks = (n + detail::kChunk - 1) / detail::kChunk;
    if (nchunks <= 1) return directional_raw_sums_serial(simplices, h);
    std::vector<std::array<T, 4>> parts(nchunks);
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        std::size_t b = static_cast<std::size_t>(c) * detail::kChunk;
        parts[c] = detail::raw_sums_range(simplices, h, b, std::min(b + detail::kChunk, n));
    }
    std::array<T, 4> acc{T(0), T(0), T(0), T(0)};
    for (const auto& p : parts)
        for (int j = 0; j <= 3; ++j) acc[j] += p[j];
    return acc;
}

template <class T>
BodyMoments<T> body_moments_serial(const std::vector<Simplex<T>>& simplices, int dim) {
    BodyMoments<T> bm;
    bm.dim = dim;
    bm.m1.assign(dim, T(0));
    bm.m2 = Mat<T>(dim, dim);
    detail::body_accumulate_range(simplices, dim, 0, simplices.size(), bm);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < a; ++b) bm.m2(a, b) = bm.m2(b, a);
    return bm;
}

template <class T>
BodyMoments<T> body_moments(const std::vector<Simplex<T>>& simplices, int dim) {
    const std::size_t n = simplices.size();
    const std::size_t nchunks = (n + detail::kChunk - 1) / detail::kChunk;
    if (nchunks <= 1) return body_moments_serial(simplices, dim);
    std::vector<BodyMoments<T>> parts(nchunks);
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        BodyMoments<T> acc;
        acc.dim = dim;
        acc.m1.assign(dim, T(0));
        acc.m2 = Mat<T>(dim, dim);
        std::size_t b = static_cast<std::size_t>(c) * detail::kChunk;
        detail::body_accumulate_range(simplices, dim, b, std::min(b + detail::kChunk, n), acc);
        parts[c] = std::move(acc);
    }
    BodyMoments<T> bm;
    bm.dim = dim;
    bm.m1.assign(dim, T(0));
    bm.m2 = Mat<T>(dim, dim);
    for (const auto& p : parts) {
        bm.vol += p.vol;
        for (int a = 0; a < dim; ++a) bm.m1[a] = bm.m1[a] + p.m1[a];
        for (int a = 0; a < dim; ++a)
            for (int b = a; b < dim; ++b) bm.m2(a, b) += p.m2(a, b);
    }
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < a; ++b) bm.m2(a, b) = bm.m2(b, a);
    return bm;
}

template <class T>
BodyMoments<T> body_moments(const Polytope<T>& P, const GeomOptions<T>& opt = {}) {
    return body_moments(geom::triangulate(P, opt), P.dim);
}

template <class T>
MarginalMoments<T> marginal_moments_from_raw(const std::array<T, 4>& sums) {
    if (sums[0] <= T(0)) throw InvalidPolytope("body has nonpositive volume");
    MarginalMoments<T> m;
    m.vol = sums[0];
    m.raw1 = sums[1] / sums[0];
    m.raw2 = sums[2] / sums[0];
    m.raw3 = sums[3] / sums[0];
    m.mu1 = m.raw1;
    m.mu2sq = m.raw2 - m.raw1 * m.raw1;
    m.mu3cu = m.raw3 - T(3) * m.raw1 * m.raw2 + T(2) * m.raw1 * m.raw1 * m.raw1;
    return m;
}

template <class T>
MarginalMoments<T> marginal_moments(const std::vector<Simplex<T>>& simplices, const Vec<T>& h) {
    if (norm_inf(h) == T(0)) throw ZeroDirection("direction must be nonzero");
    return marginal_moments_from_raw(directional_raw_sums(simplices, h));
}

template <class T>
MarginalMoments<T> marginal_moments(const Polytope<T>& P, const Vec<T>& h,
                                    const GeomOptions<T>& opt = {}) {
    if (norm_inf(h) == T(0)) throw ZeroDirection("direction must be nonzero");
    return marginal_moments_from_raw(directional_raw_sums(geom::triangulate(P, opt), h));
}

} // namespace barrierlab::moments
