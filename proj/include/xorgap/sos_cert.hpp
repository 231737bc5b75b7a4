#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "xorgap/fraction.hpp"
#include "xorgap/refutation.hpp"
#include "xorgap/xor_instance.hpp"

namespace xorgap {

// SDP vector solution in factored form. Vectors are never materialized:
// each variable set S of size <= t belongs to an equivalence class (S ~ T
// when the closure holds an equation on S symmetric-difference T) and
// carries a sign bit b_S, with u_S = (-1)^{b_S} times the class
// representative's unit direction. All moments are then exactly -1, 0 or +1.
struct SosCertificate {
    int t = 0;
    uint32_t n_vars = 0;
    std::vector<std::vector<uint32_t>> sets;  // all |S| <= t, graded-lex order
    std::vector<int32_t> class_of;            // per set index
    std::vector<int32_t> rep_of_class;        // set index of the lex-least member
    std::vector<uint8_t> sign_of;             // b_S per set index
    std::shared_ptr<const ResolutionClosure> closure;  // the width-2t closure

    size_t set_count() const { return sets.size(); }
    std::optional<size_t> set_index(const std::vector<uint32_t>& s) const;
};

// All variable sets of size <= t over n variables, graded-lex.
std::vector<std::vector<uint32_t>> enumerate_sets(uint32_t n_vars, int t);
uint64_t set_count_bound(uint32_t n_vars, int t);

// Builds the certificate from the width-2t closure of the system. Throws
// std::domain_error when that closure is refuted (no certificate exists at
// this level) and BudgetExceeded when the set enumeration is too large.
SosCertificate build_certificate(const XorSystem& sys, int t, uint64_t budget);

// <u_S1, u_S2>: 0 across classes, otherwise (-1)^{b_S1 + b_S2}.
int moment(const SosCertificate& cert, const std::vector<uint32_t>& s1,
           const std::vector<uint32_t>& s2);

struct VerifyViolation {
    std::string what;
    std::vector<uint32_t> s1, s2, s3, s4;  // witness quadruple (or pair)
};

struct VerifyReport {
    bool ok = false;
    bool norms_ok = false;
    bool consistency_exhaustive = false;  // bucketed over all pairs vs sampled
    uint64_t pairs_checked = 0;
    std::vector<VerifyViolation> violations;

    bool objective_defined = false;
    Fraction objective;          // 1/2 + (1/2m) sum of signed constraint moments
    bool objective_is_one = false;

    // min eigenvalue of the Gram matrix over sets of size <= t and <= t/2;
    // both must be >= -1e-8 * dimension.
    double min_eig_full = 0.0, min_eig_half = 0.0;
    bool psd_full = false, psd_half = false;
};

// Checks the relaxation constraints on the certificate: moment consistency
// across equal symmetric differences, unit norms, the objective value, and
// numeric positive semidefiniteness of the moment matrices. The closure is
// rebuilt from the system when the certificate does not carry one.
VerifyReport verify_certificate(const SosCertificate& cert, const XorSystem& sys,
                                uint64_t closure_budget = 1000000, uint64_t seed = 1,
                                uint64_t sample_quadruples = 100000);

// Certificate file: "t <t>", per class "class <rep-set>", per set
// "set <S> class <id> sign <b>"; sets are comma-separated indices, "-" for
// the empty set.
void write_certificate(std::ostream& out, const SosCertificate& cert);
SosCertificate read_certificate(std::istream& in, uint32_t n_vars);

}  // namespace xorgap
