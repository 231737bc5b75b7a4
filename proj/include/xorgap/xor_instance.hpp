#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "xorgap/cohomology.hpp"
#include "xorgap/complex.hpp"
#include "xorgap/fraction.hpp"

namespace xorgap {

enum class VarMode { edge, vertex };

std::string var_mode_name(VarMode m);
VarMode var_mode_from_name(const std::string& s);

struct XorEquation {
    std::vector<uint32_t> vars;  // ascending, distinct
    uint8_t rhs = 0;

    bool operator==(const XorEquation& o) const { return vars == o.vars && rhs == o.rhs; }
};

// A system of parity constraints. Systems generated from a complex have
// exactly three variables per equation; hand-built systems may use any
// width (only width-3 systems are serializable in the instance format).
struct XorSystem {
    uint32_t n_vars = 0;
    std::vector<XorEquation> equations;
    VarMode mode = VarMode::edge;
    std::string complex_digest;
    std::string beta_digest;

    void add_equation(std::vector<uint32_t> vars, uint8_t rhs);
    size_t m() const { return equations.size(); }

    bool operator==(const XorSystem& o) const {
        return n_vars == o.n_vars && equations == o.equations && mode == o.mode &&
               complex_digest == o.complex_digest && beta_digest == o.beta_digest;
    }
};

// One equation per triangle of X. Edge mode: the triangle's three edge
// variables; vertex mode: its three vertex variables. Right-hand side is
// beta evaluated on the triangle.
XorSystem make_instance(const SimplicialComplex& x, const Cocycle& beta, VarMode mode);

struct Assignment {
    BitVec values;
};

size_t violated_count(const XorSystem& sys, const Assignment& a);
Fraction violated_fraction(const XorSystem& sys, const Assignment& a);

struct Optimum {
    Fraction min_violated;
    Assignment argmin;
};

// Exact optimum over all 2^n assignments. Ties broken by the smallest
// assignment encoding (variable i is bit i), independent of thread count.
Optimum exhaustive_optimum(const XorSystem& sys, uint64_t budget, unsigned threads = 1);

// Edge-mode shortcut: the violated count of an assignment f is
// |delta_1 f + beta|, so the optimum is the minimum weight of the coset of
// beta modulo the coboundary space (2^rank(delta_1) candidates). Must agree
// with exhaustive_optimum; the two routes are kept separate so tests can
// compare them.
Optimum optimum_via_coset(const SimplicialComplex& x, const Cocycle& beta, uint64_t budget,
                          unsigned threads = 1);

// Instance file: "p xor <n_vars> <m>", then one "v1 v2 v3 rhs" line per
// equation with ascending 0-based variables. "c"-lines are comments;
// structured comments carry mode and source digests.
void write_xor(std::ostream& out, const XorSystem& sys);
XorSystem read_xor(std::istream& in);

}  // namespace xorgap
