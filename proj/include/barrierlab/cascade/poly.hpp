#pragma once

#include "barrierlab/errors.hpp"
#include "barrierlab/scalar.hpp"

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace barrierlab::cascade {

// Dense integer-coefficient polynomial in k, coefficients ascending.
class KPoly {
public:
    KPoly() = default;
    explicit KPoly(long c) { if (c != 0) c_.push_back(BigInt(c)); }
    explicit KPoly(BigInt c) { if (c != 0) c_.push_back(std::move(c)); }
    static KPoly from_coeffs(std::vector<BigInt> c);
    static KPoly variable() { return from_coeffs({BigInt(0), BigInt(1)}); }
    static KPoly linear(BigInt c0, BigInt c1) { return from_coeffs({std::move(c0), std::move(c1)}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<BigInt>& coeffs() const { return c_; }

    KPoly& operator+=(const KPoly& o);
    KPoly& operator-=(const KPoly& o);
    KPoly operator+(const KPoly& o) const { KPoly r = *this; r += o; return r; }
    KPoly operator-(const KPoly& o) const { KPoly r = *this; r -= o; return r; }
    KPoly operator*(const KPoly& o) const;
    KPoly operator-() const;
    KPoly& operator*=(const BigInt& c);
    bool operator==(const KPoly& o) const { return c_ == o.c_; }

    BigInt eval_int(long k) const;
    Rational eval(const Rational& k) const;
    // substitute k -> k + m
    KPoly shifted(long m) const;
    bool coeffs_nonneg() const;
    std::string str(const std::string& var = "k") const;

private:
    std::vector<BigInt> c_;
    void trim();
};

// Univariate integer polynomial in gamma (for chain collapse at fixed k).
class GammaPoly {
public:
    GammaPoly() = default;
    static GammaPoly from_coeffs(std::vector<BigInt> c);
    static GammaPoly monomial(BigInt c, long e);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<BigInt>& coeffs() const { return c_; }

    GammaPoly& operator+=(const GammaPoly& o);
    GammaPoly operator+(const GammaPoly& o) const { GammaPoly r = *this; r += o; return r; }
    GammaPoly operator-(const GammaPoly& o) const;
    GammaPoly operator*(const GammaPoly& o) const;
    GammaPoly pow(long e) const;
    GammaPoly derivative() const;
    bool operator==(const GammaPoly& o) const { return c_ == o.c_; }

    Rational eval(const Rational& g) const;
    std::string str() const;

private:
    std::vector<BigInt> c_;
    void trim();
};

Rational rat_pow(const Rational& base, long e);

struct ExpKey {
    int a; // multiplier of k in the exponent
    int b; // constant part
    auto operator<=>(const ExpKey&) const = default;
};

// Sum of c(k) * gamma^(a k + b) with integer-polynomial coefficients; the
// canonical term map doubles as the equality predicate for the chain proofs.
// Every transcribed constant has |a| <= 4 and intermediate products stay
// within |a| <= 8; anything larger is a transcription bug.
class ExpPoly {
public:
    ExpPoly() = default;
    static ExpPoly term(KPoly c, int a, int b);

    void add_term(KPoly c, int a, int b);
    bool is_zero() const { return terms_.empty(); }
    const std::map<ExpKey, KPoly>& terms() const { return terms_; }

    ExpPoly operator+(const ExpPoly& o) const;
    ExpPoly operator-(const ExpPoly& o) const;
    ExpPoly operator*(const ExpPoly& o) const;
    ExpPoly operator-() const;
    ExpPoly times_monomial(const KPoly& c, int a, int b) const;
    ExpPoly times(const KPoly& c) const { return times_monomial(c, 0, 0); }
    bool operator==(const ExpPoly& o) const { return terms_ == o.terms_; }

    // termwise d/dgamma: c(k) gamma^(ak+b) -> (ak+b) c(k) gamma^(ak+b-1)
    ExpPoly differentiate() const;
    KPoly at_gamma1() const;
    GammaPoly collapse(long k) const;
    Rational eval(const Rational& gamma, long k) const;

    // human-readable description of the first term where the two differ
    std::string first_difference(const ExpPoly& o) const;
    std::string str() const;

private:
    std::map<ExpKey, KPoly> terms_;
};

// Polynomial in (gamma, xi) with KPoly coefficients; carries the Appendix-B
// style statement where xi stands in for gamma^k.
class XiPoly {
public:
    XiPoly() = default;
    static XiPoly term(KPoly c, int gamma_pow, int xi_pow);

    XiPoly operator+(const XiPoly& o) const;
    XiPoly operator-(const XiPoly& o) const;
    XiPoly operator*(const XiPoly& o) const;
    XiPoly times(const KPoly& c) const;
    bool operator==(const XiPoly& o) const { return terms_ == o.terms_; }

    ExpPoly substitute_xi() const; // xi -> gamma^k
    Rational eval(const Rational& gamma, const Rational& xi, long k) const;
    const std::map<std::pair<int, int>, KPoly>& terms() const { return terms_; }

private:
    std::map<std::pair<int, int>, KPoly> terms_; // (gamma_pow, xi_pow) -> coeff
    void prune();
};

} // namespace barrierlab::cascade
