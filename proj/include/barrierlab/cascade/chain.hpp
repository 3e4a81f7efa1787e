#pragma once

#include "barrierlab/cascade/poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace barrierlab::cascade {

// scale * prod of linear factors in k, times gamma^(a k + b)
struct ScalarFactor {
    BigInt scale{1};
    std::vector<KPoly> linear;
    int a = 0, b = 0;
    KPoly coeff() const;
    std::string str() const;
};

struct ChainStep {
    std::string lhs, rhs;
    ScalarFactor factor;
};

// scale * prod of (arbitrary-degree) factors in k
struct BoundaryProduct {
    BigInt scale{1};
    std::vector<KPoly> factors;
    KPoly expand() const;
    std::string str() const;
};

// coeff * prod of (gamma^(k+offset) - 1) factors
struct ProductSummand {
    ScalarFactor coeff;
    std::vector<int> offsets;
};

// coeff * prod of (xi * gamma^p - 1) factors
struct XiSummand {
    ScalarFactor coeff;
    std::vector<int> xi_pows;
};

struct SmallKCase {
    long k = 0;
    BigInt scale{1};
    int gamma_minus_one_pow = 0;
    int gamma_pow = 0;
    std::vector<BigInt> tail;
};

// The transcribed chain constants. The JSON transcription file is the source
// of truth; a copy is embedded at build time so the verifier needs no paths.
struct ChainData {
    long k_min = 5;

    std::map<std::string, ExpPoly> f_polys;
    std::vector<ChainStep> f_steps;
    ScalarFactor f2pp_factor;
    ExpPoly f2pp_bracket;

    ScalarFactor g_lead;
    std::vector<ProductSummand> a_summands, b_summands;
    ScalarFactor g_prefactor; // includes the gamma^k part
    int g_prefactor_gm1_pow = 2;
    std::map<std::string, ExpPoly> g_polys;
    std::vector<ChainStep> g_steps;
    std::map<std::string, BoundaryProduct> boundary;
    std::vector<SmallKCase> small_k;

    ScalarFactor big_g_lead;
    std::vector<XiSummand> big_ga_summands, big_gb_summands;

    static ChainData parse(const std::string& json_text);
    static const ChainData& builtin();
    std::string dump_json() const;

    ExpPoly build_a() const;
    ExpPoly build_b() const;
    ExpPoly build_g() const; // lead * A^3 - B^2
    XiPoly build_big_ga() const;
    XiPoly build_big_gb() const;
    XiPoly build_big_g() const;

    // structural evaluation of G without expanding the polynomial
    Rational eval_big_g(const Rational& gamma, const Rational& xi, long k) const;
};

} // namespace barrierlab::cascade
