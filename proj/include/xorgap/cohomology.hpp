#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "xorgap/complex.hpp"
#include "xorgap/fraction.hpp"

namespace xorgap {

// Chain/cochain space dimensions per degree. Z^i/B^i/H^i come from the
// coboundary operators, Z_i/B_i/H_i from the boundary operators; both are
// computed independently so the duality identities act as internal checks.
struct DimReport {
    size_t c = 0;
    size_t z_up = 0, b_up = 0, h_up = 0;      // cocycles, coboundaries, cohomology
    size_t z_down = 0, b_down = 0, h_down = 0;  // cycles, boundaries, homology
};

struct CohomologyReport {
    std::vector<DimReport> dims;  // index = degree
    bool hom_equals_cohom = true;     // dim H_i == dim H^i for all i
    bool rank_duality = true;         // dim Z_i + dim B^i == dim C^i for all i

    const DimReport& at(int i) const { return dims.at(static_cast<size_t>(i)); }
    bool identities_ok() const { return hom_equals_cohom && rank_duality; }
};

CohomologyReport cohomology_report(const SimplicialComplex& x);

enum class CocycleClass { trivial, nontrivial };

struct Cocycle {
    Chain chain;
    CocycleClass cls = CocycleClass::trivial;
};

// Deterministic nontrivial cocycle in degree i: the first vector of the
// canonical kernel basis of delta_i that is not a coboundary. Throws
// std::domain_error when H^i = 0.
Cocycle pick_nontrivial_cocycle(const SimplicialComplex& x, int i);

// Wraps a caller-supplied chain, classifying it by coboundary membership.
Cocycle classify_cocycle(const SimplicialComplex& x, const Chain& c);

struct CosystoleResult {
    Fraction fraction;   // min weight over Z^i \ B^i, divided by |X(i)|
    size_t weight = 0;
    Chain witness;
};

// Exact cosystole by enumerating every nontrivial cohomology class and the
// full coboundary coset inside each; 2^(dim B^i) * (2^(dim H^i) - 1)
// candidates, guarded by budget.
CosystoleResult cosystole(const SimplicialComplex& x, int i, uint64_t budget,
                          unsigned threads = 1);

// Distance from a 2-chain to the boundary space B_2 = im boundary_3.
// Equals weight(h) when the complex has no tetrahedra.
size_t kappa(const SimplicialComplex& x, const Chain& h, uint64_t budget);

struct FillingResult {
    Chain filling;
    size_t size = 0;
};

// Minimum-weight g with boundary(g) = f, by particular solution plus
// exhaustive search over the kernel of boundary_2. Returns nullopt when f is
// not a boundary (possible when H_1 of the ball is nonzero). Throws when f
// is not a cycle.
std::optional<FillingResult> min_filling(const SimplicialComplex& ball_complex, const Chain& f,
                                         uint64_t budget);

}  // namespace xorgap
