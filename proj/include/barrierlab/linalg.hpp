#pragma once

#include "barrierlab/scalar.hpp"

#include <cassert>
#include <cstddef>
#include <optional>
#include <vector>

namespace barrierlab {

template <class T>
using Vec = std::vector<T>;

template <class T>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
    assert(a.size() == b.size());
    T s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

template <class T>
Vec<T> vsub(const Vec<T>& a, const Vec<T>& b) {
    Vec<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

template <class T>
Vec<T> vadd(const Vec<T>& a, const Vec<T>& b) {
    Vec<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

template <class T>
Vec<T> vscale(const T& c, const Vec<T>& a) {
    Vec<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

template <class T>
Vec<T> matvec(const Mat<T>& m, const Vec<T>& v) {
    Vec<T> r(m.rows(), T(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

inline double norm2(const Vec<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

template <class T>
T norm_inf(const Vec<T>& v) {
    T m(0);
    for (const T& x : v) {
        T a = scalar_abs(x);
        if (a > m) m = a;
    }
    return m;
}

// Gaussian elimination with partial pivoting. For exact scalars any nonzero
// pivot is fine; for doubles pick the largest magnitude.
template <class T>
std::optional<Vec<T>> solve_linear(Mat<T> a, Vec<T> b) {
    const std::size_t n = a.rows();
    assert(a.cols() == n && b.size() == n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        T best = scalar_abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            T v = scalar_abs(a(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
            if constexpr (ScalarTraits<T>::exact) {
                if (best != T(0)) break; // any nonzero pivot works exactly
            }
        }
        if (best == T(0)) return std::nullopt;
        if (piv != col) {
            for (std::size_t j = col; j < n; ++j) std::swap(a(col, j), a(piv, j));
            std::swap(b[col], b[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a(r, col) == T(0)) continue;
            T f = a(r, col) / a(col, col);
            a(r, col) = T(0);
            for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= f * a(col, j);
            b[r] -= f * b[col];
        }
    }
    Vec<T> x(n, T(0));
    for (std::size_t i = n; i-- > 0;) {
        T s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

template <class T>
T det(Mat<T> a) {
    const std::size_t n = a.rows();
    assert(a.cols() == n);
    T d(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        T best = scalar_abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            T v = scalar_abs(a(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
            if constexpr (ScalarTraits<T>::exact) {
                if (best != T(0)) break;
            }
        }
        if (best == T(0)) return T(0);
        if (piv != col) {
            for (std::size_t j = col; j < n; ++j) std::swap(a(col, j), a(piv, j));
            d = -d;
        }
        d *= a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a(r, col) == T(0)) continue;
            T f = a(r, col) / a(col, col);
            for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return d;
}

// Numerical rank with a relative pivot threshold (exact scalars: true rank).
template <class T>
std::size_t rank(Mat<T> a, const T& tol) {
    const std::size_t m = a.rows(), n = a.cols();
    T scale(0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            T v = scalar_abs(a(i, j));
            if (v > scale) scale = v;
        }
    if (scale == T(0)) return 0;
    T thresh = tol * scale;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < m; ++col) {
        std::size_t piv = r;
        T best = scalar_abs(a(r, col));
        for (std::size_t i = r + 1; i < m; ++i) {
            T v = scalar_abs(a(i, col));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= thresh) continue;
        if (piv != r)
            for (std::size_t j = 0; j < n; ++j) std::swap(a(r, j), a(piv, j));
        for (std::size_t i = r + 1; i < m; ++i) {
            if (a(i, col) == T(0)) continue;
            T f = a(i, col) / a(r, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

} // namespace barrierlab
