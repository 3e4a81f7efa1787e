#pragma once

#include "barrierlab/errors.hpp"
#include "barrierlab/linalg.hpp"
#include "barrierlab/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace barrierlab::geom {

// Halfspace {y : normal . y <= offset}.
template <class T>
struct Halfspace {
    Vec<T> normal;
    T offset;
};

// A bounded full-dimensional polytope held as halfspaces and (possibly lazily
// computed) vertices. Either representation can be derived from the other at
// desk scale.
template <class T>
struct Polytope {
    int dim = 0;
    std::vector<Halfspace<T>> halfspaces;
    std::vector<Vec<T>> vertices;

    bool has_vertices() const { return !vertices.empty(); }
    bool has_halfspaces() const { return !halfspaces.empty(); }
};

template <class T>
struct Simplex {
    std::vector<Vec<T>> verts; // dim+1 points in R^dim
    T volume = T(0);
    bool degenerate = false;
};

template <class T>
struct GeomOptions {
    T interior_margin = ScalarTraits<T>::interior_margin();
    T feas_tol = ScalarTraits<T>::feas_tol();
    T dedup_tol = ScalarTraits<T>::dedup_tol();
    T sliver_tol = ScalarTraits<T>::sliver_tol();
    T rank_tol = ScalarTraits<T>::rank_tol();
};

namespace detail {

template <class T>
bool lex_less(const Vec<T>& a, const Vec<T>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return false;
}

template <class T>
T coord_scale(const std::vector<Vec<T>>& pts) {
    T s(1);
    for (const auto& p : pts)
        for (const T& x : p) {
            T a = scalar_abs(x);
            if (a > s) s = a;
        }
    return s;
}

// first combination [0,1,...,k-1]; advances to the next k-subset of {0..m-1}
inline bool next_combination(std::vector<std::size_t>& idx, std::size_t m) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < m - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

template <class T>
std::size_t affine_rank(const std::vector<Vec<T>>& pts, const std::vector<int>& subset,
                        const GeomOptions<T>& opt) {
    if (subset.size() <= 1) return 0;
    const std::size_t n = pts[subset[0]].size();
    Mat<T> d(subset.size() - 1, n);
    for (std::size_t i = 1; i < subset.size(); ++i) {
        Vec<T> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = pts[subset[i]][j] - pts[subset[0]][j];
        // row-normalize: affine independence is about directions, and polar
        // bodies near the boundary mix wildly different coordinate scales
        if constexpr (!ScalarTraits<T>::exact) {
            T m = norm_inf(row);
            if (m > T(0))
                for (auto& c : row) c /= m;
        }
        for (std::size_t j = 0; j < n; ++j) d(i - 1, j) = row[j];
    }
    return rank(d, opt.rank_tol);
}

// scale-aware tightness of a halfspace at a point: |b - a.v| measured against
// the magnitudes that enter the dot product
template <class T>
bool is_tight(const Halfspace<T>& h, const Vec<T>& v, const T& tol) {
    T absdot(0);
    for (std::size_t i = 0; i < v.size(); ++i) absdot += scalar_abs(h.normal[i]) * scalar_abs(v[i]);
    return scalar_abs(h.offset - dot(h.normal, v)) <= tol * (T(1) + scalar_abs(h.offset) + absdot);
}

} // namespace detail

template <class T>
bool is_interior(const Polytope<T>& P, const Vec<T>& x, const GeomOptions<T>& opt = {}) {
    for (const auto& h : P.halfspaces) {
        T slack = h.offset - dot(h.normal, x);
        T margin = opt.interior_margin * (T(1) + scalar_abs(h.offset));
        if constexpr (ScalarTraits<T>::exact) {
            if (slack <= margin) return false;
        } else {
            if (slack < margin) return false;
        }
    }
    return true;
}

template <class T>
void require_interior(const Polytope<T>& P, const Vec<T>& x, const GeomOptions<T>& opt = {}) {
    if (!is_interior(P, x, opt)) throw NotInterior("point is not strictly interior");
}

// Exhaustive vertex enumeration: solve every n-subset of the constraint
// system and keep feasible, deduplicated solutions. O(C(m,n) n^3); fine at
// desk scale. Throws Unbounded when the recession cone contains a ray
// (detected through a box-capped cone probe) unless assume_bounded is set.
template <class T>
std::vector<Vec<T>> enumerate_vertices(int dim, const std::vector<Halfspace<T>>& hs,
                                       const GeomOptions<T>& opt = {},
                                       bool assume_bounded = false);

namespace detail {

// The recession cone {d : a_i . d <= 0} capped to the unit box is a bounded
// polytope containing 0; it has a nonzero vertex exactly when the original
// system is unbounded.
template <class T>
void check_bounded(int dim, const std::vector<Halfspace<T>>& hs, const GeomOptions<T>& opt) {
    std::vector<Halfspace<T>> cone;
    cone.reserve(hs.size() + 2 * dim);
    for (const auto& h : hs) cone.push_back({h.normal, T(0)});
    for (int i = 0; i < dim; ++i) {
        Vec<T> e(dim, T(0));
        e[i] = T(1);
        cone.push_back({e, T(1)});
        e[i] = T(-1);
        cone.push_back({e, T(1)});
    }
    auto rays = enumerate_vertices(dim, cone, opt, /*assume_bounded=*/true);
    for (const auto& d : rays) {
        if (to_double(norm_inf(d)) > 0.5) {
            for (int i = 0; i < dim; ++i)
                if (to_double(scalar_abs(d[i])) > 0.5)
                    throw Unbounded("system unbounded along coordinate probe e_" +
                                    std::to_string(i));
            throw Unbounded("system has a nonzero recession direction");
        }
    }
}

} // namespace detail

template <class T>
std::vector<Vec<T>> enumerate_vertices(int dim, const std::vector<Halfspace<T>>& hs,
                                       const GeomOptions<T>& opt, bool assume_bounded) {
    const std::size_t m = hs.size();
    const std::size_t n = static_cast<std::size_t>(dim);
    if (m < n) throw Unbounded("fewer halfspaces than dimensions");
    if (!assume_bounded) detail::check_bounded(dim, hs, opt);

    std::vector<Vec<T>> found;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    Mat<T> a(n, n);
    Vec<T> b(n);
    do {
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) a(r, c) = hs[idx[r]].normal[c];
            b[r] = hs[idx[r]].offset;
        }
        auto y = solve_linear(a, b);
        if (!y) continue; // singular subset, skipped
        bool feasible = true;
        for (std::size_t j = 0; j < m; ++j) {
            T absdot(0);
            for (std::size_t c = 0; c < n; ++c)
                absdot += scalar_abs(hs[j].normal[c]) * scalar_abs((*y)[c]);
            T slack = hs[j].offset - dot(hs[j].normal, *y);
            if (slack < -opt.feas_tol * (T(1) + scalar_abs(hs[j].offset) + absdot)) {
                feasible = false;
                break;
            }
        }
        if (feasible) found.push_back(std::move(*y));
    } while (detail::next_combination(idx, m));

    if (found.empty()) throw InvalidPolytope("constraint system has no vertices");

    std::sort(found.begin(), found.end(), detail::lex_less<T>);
    std::vector<Vec<T>> out;
    for (auto& v : found) {
        bool dup = false;
        for (const auto& u : out) {
            T tol = opt.dedup_tol * (T(1) + std::max(norm_inf(u), norm_inf(v)));
            if (norm_inf(vsub(v, u)) <= tol) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(std::move(v));
    }
    return out;
}

// Facet enumeration from a vertex set (the V-to-H direction): every n-subset
// spanning a hyperplane with all vertices on one side contributes a facet.
template <class T>
std::vector<Halfspace<T>> facet_halfspaces(int dim, const std::vector<Vec<T>>& verts,
                                           const GeomOptions<T>& opt = {}) {
    const std::size_t n = static_cast<std::size_t>(dim);
    if (verts.size() < n + 1) throw DimensionDeficient("vertex set cannot span R^n");
    T scale = detail::coord_scale(verts);

    std::vector<Halfspace<T>> out;
    auto push_unique = [&](Vec<T> w, T c) {
        if constexpr (ScalarTraits<T>::exact) {
            T piv(0);
            for (const T& x : w)
                if (x != T(0)) {
                    piv = scalar_abs(x);
                    break;
                }
            for (T& x : w) x /= piv;
            c /= piv;
        } else {
            double nw = norm2(w);
            for (T& x : w) x /= nw;
            c /= nw;
        }
        for (const auto& h : out) {
            if (norm_inf(vsub(h.normal, w)) <= opt.dedup_tol &&
                scalar_abs(h.offset - c) <= opt.dedup_tol * (T(1) + scalar_abs(c)))
                return;
        }
        out.push_back({std::move(w), std::move(c)});
    };

    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    do {
        // normal via cofactor expansion of the difference matrix
        Vec<T> w(n, T(0));
        if (n == 1) {
            w[0] = T(1);
        } else {
            Mat<T> d(n - 1, n);
            for (std::size_t i = 1; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    d(i - 1, j) = verts[idx[i]][j] - verts[idx[0]][j];
            for (std::size_t j = 0; j < n; ++j) {
                Mat<T> minor(n - 1, n - 1);
                for (std::size_t r = 0; r < n - 1; ++r) {
                    std::size_t cc = 0;
                    for (std::size_t c = 0; c < n; ++c) {
                        if (c == j) continue;
                        minor(r, cc++) = d(r, c);
                    }
                }
                T dv = det(minor);
                w[j] = (j % 2 == 0) ? dv : T(-dv);
            }
        }
        if (to_double(norm_inf(w)) <= to_double(opt.rank_tol * scale)) continue;
        T c = dot(w, verts[idx[0]]);
        T lo(0), hi(0);
        for (const auto& v : verts) {
            T s = dot(w, v) - c;
            if (s < lo) lo = s;
            if (s > hi) hi = s;
        }
        T tol = opt.feas_tol * scale * norm_inf(w);
        if (hi <= tol)
            push_unique(w, c);
        else if (lo >= -tol)
            push_unique(vscale(T(-1), w), -c);
    } while (detail::next_combination(idx, verts.size()));

    if (out.size() < n + 1) throw DimensionDeficient("vertex set spans no full-dimensional hull");
    return out;
}

template <class T>
void ensure_vertices(Polytope<T>& P, const GeomOptions<T>& opt = {}) {
    if (!P.has_vertices()) P.vertices = enumerate_vertices(P.dim, P.halfspaces, opt);
}

template <class T>
void ensure_halfspaces(Polytope<T>& P, const GeomOptions<T>& opt = {}) {
    if (!P.has_halfspaces()) P.halfspaces = facet_halfspaces(P.dim, P.vertices, opt);
}

// Polar set {y : y.(z - x) <= 1 for all z in K}; one halfspace per vertex of
// K. Bounded by construction when x is strictly interior, so the vertex pass
// skips the boundedness probe.
template <class T>
Polytope<T> polar_body(const Polytope<T>& K, const Vec<T>& x, const GeomOptions<T>& opt = {}) {
    Polytope<T> K2 = K;
    ensure_halfspaces(K2, opt);
    require_interior(K2, x, opt);
    ensure_vertices(K2, opt);
    Polytope<T> P;
    P.dim = K.dim;
    P.halfspaces.reserve(K2.vertices.size());
    for (const auto& v : K2.vertices) P.halfspaces.push_back({vsub(v, x), T(1)});
    P.vertices = enumerate_vertices(P.dim, P.halfspaces, opt, /*assume_bounded=*/true);
    return P;
}

// drop halfspaces that are not tight on a full (n-1)-dimensional vertex set
template <class T>
void remove_redundant(Polytope<T>& P, const GeomOptions<T>& opt = {}) {
    ensure_vertices(P, opt);
    std::vector<Halfspace<T>> kept;
    for (const auto& h : P.halfspaces) {
        std::vector<int> tightset;
        for (std::size_t i = 0; i < P.vertices.size(); ++i)
            if (detail::is_tight(h, P.vertices[i], opt.feas_tol))
                tightset.push_back(static_cast<int>(i));
        if (static_cast<int>(tightset.size()) >= P.dim &&
            detail::affine_rank(P.vertices, tightset, opt) ==
                static_cast<std::size_t>(P.dim) - 1)
            kept.push_back(h);
    }
    P.halfspaces = std::move(kept);
}

template <class T>
T simplex_volume(const Simplex<T>& s) {
    const std::size_t n = s.verts.size() - 1;
    Mat<T> e(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e(i, j) = s.verts[i + 1][j] - s.verts[0][j];
    T d = scalar_abs(det(e));
    T fact(1);
    for (std::size_t i = 2; i <= n; ++i) fact *= T(static_cast<long>(i));
    return d / fact;
}

namespace detail {

// Triangulate the d-face spanned by `face` (vertex indices into pts) by
// fanning from its first vertex over its recursively triangulated subfaces.
template <class T>
void fan_triangulate(const std::vector<Vec<T>>& pts,
                     const std::vector<std::vector<bool>>& tight,
                     const std::vector<int>& face, std::size_t d,
                     const GeomOptions<T>& opt, std::vector<std::vector<int>>& out) {
    if (face.size() == d + 1) {
        out.push_back(face);
        return;
    }
    const int apex = face[0];
    const std::size_t m = tight.empty() ? 0 : tight[0].size();
    std::set<std::vector<int>> seen;
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<int> sub;
        bool all_tight = true;
        for (int vi : face) {
            if (tight[vi][j])
                sub.push_back(vi);
            else
                all_tight = false;
        }
        if (all_tight || sub.size() < d) continue;
        if (std::find(sub.begin(), sub.end(), apex) != sub.end()) continue;
        if (affine_rank(pts, sub, opt) != d - 1) continue;
        if (!seen.insert(sub).second) continue;
        std::vector<std::vector<int>> subsimp;
        fan_triangulate(pts, tight, sub, d - 1, opt, subsimp);
        for (auto& s : subsimp) {
            std::vector<int> with_apex;
            with_apex.push_back(apex);
            with_apex.insert(with_apex.end(), s.begin(), s.end());
            out.push_back(std::move(with_apex));
        }
    }
}

} // namespace detail

// Cone from the vertex centroid over a triangulation of every boundary facet.
// Deterministic given the (sorted) vertex order; slivers are kept but flagged
// degenerate and carry zero measure.
template <class T>
std::vector<Simplex<T>> triangulate(const Polytope<T>& P, const GeomOptions<T>& opt = {}) {
    Polytope<T> B = P;
    ensure_vertices(B, opt);
    ensure_halfspaces(B, opt);
    const std::size_t n = static_cast<std::size_t>(B.dim);

    std::vector<Vec<T>> pts = B.vertices;
    std::sort(pts.begin(), pts.end(), detail::lex_less<T>);
    std::vector<int> all(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) all[i] = static_cast<int>(i);
    if (detail::affine_rank(pts, all, opt) < n)
        throw DimensionDeficient("vertices do not span R^n");

    if (n == 1) {
        Simplex<T> s;
        s.verts = {pts.front(), pts.back()};
        s.volume = simplex_volume(s);
        return {s};
    }

    const std::size_t m = B.halfspaces.size();
    std::vector<std::vector<bool>> tight(pts.size(), std::vector<bool>(m, false));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < m; ++j)
            tight[i][j] = detail::is_tight(B.halfspaces[j], pts[i], opt.feas_tol);

    Vec<T> centroid(n, T(0));
    for (const auto& p : pts) centroid = vadd(centroid, p);
    T inv = T(1) / T(static_cast<long>(pts.size()));
    centroid = vscale(inv, centroid);

    std::vector<Simplex<T>> out;
    std::set<std::vector<int>> facet_seen;
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<int> facet;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (tight[i][j]) facet.push_back(static_cast<int>(i));
        if (facet.size() < n) continue;
        if (detail::affine_rank(pts, facet, opt) != n - 1) continue;
        if (!facet_seen.insert(facet).second) continue;
        std::vector<std::vector<int>> cells;
        detail::fan_triangulate(pts, tight, facet, n - 1, opt, cells);
        for (const auto& cell : cells) {
            Simplex<T> s;
            s.verts.reserve(n + 1);
            s.verts.push_back(centroid);
            for (int vi : cell) s.verts.push_back(pts[vi]);
            s.volume = simplex_volume(s);
            T fact(1);
            for (std::size_t i = 2; i <= n; ++i) fact *= T(static_cast<long>(i));
            if (s.volume * fact <= opt.sliver_tol * scale) {
                s.degenerate = true;
                s.volume = T(0);
            }
            out.push_back(std::move(s));
        }
    }
    if (out.empty()) throw DimensionDeficient("triangulation produced no cells");
    return out;
}

template <class T>
T volume(const Polytope<T>& P, const GeomOptions<T>& opt = {}) {
    T v(0);
    for (const auto& s : triangulate(P, opt))
        if (!s.degenerate) v += s.volume;
    return v;
}

template <class T>
std::pair<Vec<T>, Vec<T>> bounding_box(const Polytope<T>& P) {
    Vec<T> lo = P.vertices.at(0), hi = P.vertices.at(0);
    for (const auto& v : P.vertices)
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] < lo[i]) lo[i] = v[i];
            if (v[i] > hi[i]) hi[i] = v[i];
        }
    return {lo, hi};
}

template <class T>
Vec<T> vertex_centroid(const Polytope<T>& P) {
    Vec<T> c(P.dim, T(0));
    for (const auto& v : P.vertices) c = vadd(c, v);
    return vscale(T(1) / T(static_cast<long>(P.vertices.size())), c);
}

// --- stock bodies ---

template <class T>
Polytope<T> box(int dim, const T& lo, const T& hi) {
    Polytope<T> P;
    P.dim = dim;
    for (int i = 0; i < dim; ++i) {
        Vec<T> e(dim, T(0));
        e[i] = T(1);
        P.halfspaces.push_back({e, hi});
        e[i] = T(-1);
        P.halfspaces.push_back({e, -lo});
    }
    P.vertices.assign(std::size_t(1) << dim, Vec<T>(dim));
    for (std::size_t mask = 0; mask < P.vertices.size(); ++mask)
        for (int i = 0; i < dim; ++i) P.vertices[mask][i] = (mask >> i) & 1 ? hi : lo;
    return P;
}

template <class T>
Polytope<T> hypercube(int dim) {
    return box(dim, T(-1), T(1));
}

// conv{0, e_1, ..., e_n}
template <class T>
Polytope<T> standard_simplex(int dim) {
    Polytope<T> P;
    P.dim = dim;
    for (int i = 0; i < dim; ++i) {
        Vec<T> e(dim, T(0));
        e[i] = T(-1);
        P.halfspaces.push_back({e, T(0)});
    }
    P.halfspaces.push_back({Vec<T>(dim, T(1)), T(1)});
    P.vertices.push_back(Vec<T>(dim, T(0)));
    for (int i = 0; i < dim; ++i) {
        Vec<T> v(dim, T(0));
        v[i] = T(1);
        P.vertices.push_back(v);
    }
    return P;
}

template <class T>
Polytope<T> cross_polytope(int dim) {
    Polytope<T> P;
    P.dim = dim;
    for (std::size_t mask = 0; mask < (std::size_t(1) << dim); ++mask) {
        Vec<T> a(dim);
        for (int i = 0; i < dim; ++i) a[i] = (mask >> i) & 1 ? T(1) : T(-1);
        P.halfspaces.push_back({a, T(1)});
    }
    for (int i = 0; i < dim; ++i) {
        Vec<T> v(dim, T(0));
        v[i] = T(1);
        P.vertices.push_back(v);
        v[i] = T(-1);
        P.vertices.push_back(v);
    }
    return P;
}

template <class T>
Polytope<T> translated(const Polytope<T>& P, const Vec<T>& shift) {
    Polytope<T> Q = P;
    for (auto& h : Q.halfspaces) h.offset += dot(h.normal, shift);
    for (auto& v : Q.vertices) v = vadd(v, shift);
    return Q;
}

// K -> D K for diagonal D
template <class T>
Polytope<T> scaled(const Polytope<T>& P, const Vec<T>& diag) {
    Polytope<T> Q = P;
    for (auto& h : Q.halfspaces)
        for (int i = 0; i < P.dim; ++i) h.normal[i] /= diag[i];
    for (auto& v : Q.vertices)
        for (int i = 0; i < P.dim; ++i) v[i] *= diag[i];
    return Q;
}

} // namespace barrierlab::geom
