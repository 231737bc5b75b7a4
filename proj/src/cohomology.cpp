#include "xorgap/cohomology.hpp"

#include <stdexcept>
#include <string>

namespace xorgap {

namespace {

// delta_i as a matrix for every 0 <= i <= dim: the top coboundary is the
// zero map into the (empty) next chain group.
BitMatrix delta_or_zero(const SimplicialComplex& x, int i) {
    if (i < x.dim()) return x.coboundary_matrix(i);
    return BitMatrix(0, x.face_count(i));
}

BitMatrix partial_or_zero(const SimplicialComplex& x, int i) {
    if (i >= 1) return x.boundary_matrix(i);
    return BitMatrix(0, x.face_count(0));
}

std::vector<BitVec> coboundary_space_basis(const SimplicialComplex& x, int i) {
    if (i == 0) return {};
    return column_space_basis(x.coboundary_matrix(i - 1));
}

std::vector<BitVec> boundary_space_basis(const SimplicialComplex& x, int i) {
    if (i >= x.dim()) return {};
    return column_space_basis(x.boundary_matrix(i + 1));
}

}  // namespace

CohomologyReport cohomology_report(const SimplicialComplex& x) {
    CohomologyReport rep;
    int d = x.dim();
    std::vector<size_t> rk_delta(d + 1, 0), rk_partial(d + 1, 0);
    for (int i = 0; i < d; ++i) rk_delta[i] = rank(x.coboundary_matrix(i));
    for (int i = 1; i <= d; ++i) rk_partial[i] = rank(x.boundary_matrix(i));

    rep.dims.resize(d + 1);
    for (int i = 0; i <= d; ++i) {
        DimReport& r = rep.dims[i];
        r.c = x.face_count(i);
        r.z_up = r.c - (i < d ? rk_delta[i] : 0);
        r.b_up = (i >= 1 ? rk_delta[i - 1] : 0);
        r.h_up = r.z_up - r.b_up;
        r.z_down = r.c - (i >= 1 ? rk_partial[i] : 0);
        r.b_down = (i < d ? rk_partial[i + 1] : 0);
        r.h_down = r.z_down - r.b_down;
        if (r.h_up != r.h_down) rep.hom_equals_cohom = false;
        if (r.z_down + r.b_up != r.c || r.z_up + r.b_down != r.c) rep.rank_duality = false;
    }
    return rep;
}

Cocycle pick_nontrivial_cocycle(const SimplicialComplex& x, int i) {
    if (i < 0 || i > x.dim()) throw DimensionError("cocycle dimension out of range");
    std::vector<BitVec> kern = kernel_basis(delta_or_zero(x, i));
    std::vector<BitVec> b_up = coboundary_space_basis(x, i);
    for (const BitVec& z : kern) {
        if (!in_span(b_up, z)) return Cocycle{Chain{i, z}, CocycleClass::nontrivial};
    }
    throw std::domain_error("H^" + std::to_string(i) + " is trivial: every cocycle is a coboundary");
}

Cocycle classify_cocycle(const SimplicialComplex& x, const Chain& c) {
    if (c.coeffs.size() != x.face_count(c.dim))
        throw DimensionError("chain does not match complex");
    if (c.dim < x.dim()) {
        // must actually be a cocycle
        if (!x.coboundary_matrix(c.dim).apply(c.coeffs).is_zero())
            throw DimensionError("chain is not a cocycle");
    }
    bool trivial = in_span(coboundary_space_basis(x, c.dim), c.coeffs);
    return Cocycle{c, trivial ? CocycleClass::trivial : CocycleClass::nontrivial};
}

CosystoleResult cosystole(const SimplicialComplex& x, int i, uint64_t budget, unsigned threads) {
    if (i < 0 || i > x.dim()) throw DimensionError("cosystole dimension out of range");
    std::vector<BitVec> b_up = coboundary_space_basis(x, i);
    std::vector<BitVec> kern = kernel_basis(delta_or_zero(x, i));

    // Representatives of the nontrivial classes: kernel vectors independent
    // of B^i, collected greedily against a growing span.
    std::vector<BitVec> span = b_up;
    std::vector<BitVec> reps;
    for (const BitVec& z : kern) {
        if (!in_span(span, z)) {
            reps.push_back(z);
            span.push_back(z);
        }
    }
    if (reps.empty())
        throw std::domain_error("H^" + std::to_string(i) + " is trivial: cosystole undefined");

    size_t b = b_up.size(), h = reps.size();
    if (b + h >= 63 || (uint64_t(1) << b) * ((uint64_t(1) << h) - 1) > budget)
        throw BudgetExceeded("cosystole enumeration needs 2^" + std::to_string(b) + " * (2^" +
                             std::to_string(h) + " - 1) candidates, budget is " +
                             std::to_string(budget));

    CosystoleResult best;
    bool first = true;
    for (uint64_t mask = 1; mask < (uint64_t(1) << h); ++mask) {
        BitVec target(x.face_count(i));
        for (size_t j = 0; j < h; ++j)
            if (mask & (uint64_t(1) << j)) target ^= reps[j];
        CosetMin cm = coset_min_weight(b_up, target, budget, threads);
        if (first || cm.weight < best.weight ||
            (cm.weight == best.weight && cm.witness.lex_less(best.witness.coeffs))) {
            best.weight = cm.weight;
            best.witness = Chain{i, cm.witness};
            first = false;
        }
    }
    best.fraction = Fraction(static_cast<int64_t>(best.weight),
                             static_cast<int64_t>(x.face_count(i)));
    return best;
}

size_t kappa(const SimplicialComplex& x, const Chain& h, uint64_t budget) {
    if (h.dim != 2) throw DimensionError("kappa is defined for 2-chains");
    if (h.coeffs.size() != x.face_count(2)) throw DimensionError("chain does not match complex");
    std::vector<BitVec> b2 = boundary_space_basis(x, 2);
    return coset_min_weight(b2, h.coeffs, budget).weight;
}

std::optional<FillingResult> min_filling(const SimplicialComplex& ball_complex, const Chain& f,
                                         uint64_t budget) {
    if (f.dim != 1) throw DimensionError("filling is defined for 1-chains");
    if (f.coeffs.size() != ball_complex.face_count(1))
        throw DimensionError("chain does not match complex");
    if (ball_complex.dim() >= 1 &&
        !partial_or_zero(ball_complex, 1).apply(f.coeffs).is_zero())
        throw DimensionError("chain is not a cycle");

    if (ball_complex.dim() < 2) {
        if (!f.coeffs.is_zero()) return std::nullopt;
        return FillingResult{Chain{2, BitVec(0)}, 0};
    }
    const BitMatrix& d2 = ball_complex.boundary_matrix(2);
    std::optional<BitVec> g0 = solve(d2, f.coeffs);
    if (!g0) return std::nullopt;
    std::vector<BitVec> kern = kernel_basis(d2);
    CosetMin cm = coset_min_weight(kern, *g0, budget);
    return FillingResult{Chain{2, cm.witness}, cm.weight};
}

}  // namespace xorgap
