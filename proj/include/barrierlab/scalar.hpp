#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <type_traits>

namespace barrierlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// The whole geometry/moments stack is generic over the scalar field: binary64
// for ordinary runs, exact rationals for oracle runs. Everything the core
// needs from the field lives here.

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline double to_double(const BigInt& x) { return x.convert_to<double>(); }

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double from_double(double v) { return v; }
    static double from_int(long v) { return static_cast<double>(v); }
    static double fraction(long num, long den) {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    // relative tolerances used by the geometric predicates
    static double interior_margin() { return 1e-9; }
    static double feas_tol() { return 1e-9; }
    static double dedup_tol() { return 1e-7; }
    static double sliver_tol() { return 1e-14; }
    static double rank_tol() { return 1e-10; }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    // conversion from a binary64 value is exact (finite dyadic rational)
    static Rational from_double(double v) { return Rational(v); }
    static Rational from_int(long v) { return Rational(v); }
    static Rational fraction(long num, long den) { return Rational(num) / Rational(den); }
    static Rational interior_margin() { return Rational(0); }
    static Rational feas_tol() { return Rational(0); }
    static Rational dedup_tol() { return Rational(0); }
    static Rational sliver_tol() { return Rational(0); }
    static Rational rank_tol() { return Rational(0); }
};

// concrete overloads so boost expression templates materialize on the way in
inline double scalar_abs(double x) { return std::fabs(x); }
inline Rational scalar_abs(Rational x) { return x < 0 ? Rational(-x) : x; }
inline BigInt scalar_abs(BigInt x) { return x < 0 ? BigInt(-x) : x; }

} // namespace barrierlab
