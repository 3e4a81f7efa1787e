#pragma once

#include "barrierlab/cascade/chain.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace barrierlab::cascade {

struct StepResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct BoundaryRow {
    std::string name;
    std::string value; // stated factorization (or "0")
    bool is_zero = false;
    std::string certificate; // how nonnegativity for k >= k_min was certified
};

struct ChainReport {
    std::vector<StepResult> steps;
    std::vector<BoundaryRow> boundary;
    bool all_ok() const {
        for (const auto& s : steps)
            if (!s.ok) return false;
        return true;
    }
};

// Derivative chain of the scalar inequality behind the first moment bound:
// both derivative identities, the zero boundary values, and the terminal
// second-derivative positivity certificate. Throws ChainMismatch on any
// failed identity.
ChainReport verify_f_chain(const ChainData& data = ChainData::builtin());

// The long chain: the factorization of the defining polynomial, all 17
// derivative identities, the boundary values at gamma = 1, and shift-based
// nonnegativity certificates for every boundary product, every step factor
// and the terminal linear polynomial, valid for integer k >= k_min.
ChainReport verify_g_chain(const ChainData& data = ChainData::builtin());

// Exact expansion at k in {1,2,3,4} against the stated factorized forms.
ChainReport verify_small_k(const ChainData& data = ChainData::builtin());

// Substituting xi = gamma^k into the three-variable statement reproduces the
// defining polynomial exactly.
StepResult verify_substitution_identity(const ChainData& data = ChainData::builtin());

struct ImplicationSample {
    double gamma = 0, xi = 0;
    long k = 0;
};

// Heuristic falsification search for the induction-step implication: given
// gamma >= 1, xi >= gamma, k >= 1 and G(gamma, xi, k) >= 0, check
// G(gamma, xi*gamma, k+1) >= 0. A sampled search, not a proof.
struct ImplicationReport {
    long samples = 0;
    long antecedent_holds = 0;
    std::vector<ImplicationSample> counterexamples;
    bool heuristic_only = true;
    bool passed() const { return counterexamples.empty(); }
};

ImplicationReport sample_implication(long n_samples, std::uint64_t seed, bool parallel = true,
                                     const ChainData& data = ChainData::builtin());

// certificate helper: p(k) >= 0 for every integer k >= k_min
struct NonnegCertificate {
    bool ok = false;
    bool weak = false; // fell back to direct evaluation plus leading coefficient
    std::string detail;
};
NonnegCertificate certify_nonneg_from(const KPoly& p, long k_min);

} // namespace barrierlab::cascade
