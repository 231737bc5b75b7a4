#include "xorgap/xor_instance.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace xorgap {

std::string var_mode_name(VarMode m) { return m == VarMode::edge ? "edge" : "vertex"; }

VarMode var_mode_from_name(const std::string& s) {
    if (s == "edge") return VarMode::edge;
    if (s == "vertex") return VarMode::vertex;
    throw std::invalid_argument("unknown variable mode: " + s);
}

void XorSystem::add_equation(std::vector<uint32_t> vars, uint8_t rhs) {
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
        throw DimensionError("equation with a repeated variable");
    for (uint32_t v : vars)
        if (v >= n_vars) throw DimensionError("equation variable out of range");
    equations.push_back(XorEquation{std::move(vars), static_cast<uint8_t>(rhs & 1)});
}

XorSystem make_instance(const SimplicialComplex& x, const Cocycle& beta, VarMode mode) {
    if (x.dim() < 2 || x.face_count(2) == 0)
        throw DimensionError("instance requires a complex with triangles");
    if (beta.chain.dim != 2 || beta.chain.coeffs.size() != x.face_count(2))
        throw DimensionError("beta must be a 2-chain over the complex");

    XorSystem sys;
    sys.mode = mode;
    sys.n_vars = static_cast<uint32_t>(mode == VarMode::edge ? x.face_count(1) : x.face_count(0));
    sys.complex_digest = x.digest();
    sys.beta_digest = chain_digest(beta.chain);

    for (size_t t = 0; t < x.face_count(2); ++t) {
        const Face& tri = x.faces(2)[t];
        std::vector<uint32_t> vars;
        if (mode == VarMode::edge) {
            for (size_t drop = 0; drop < 3; ++drop) {
                Face e;
                for (size_t j = 0; j < 3; ++j)
                    if (j != drop) e.push_back(tri[j]);
                vars.push_back(static_cast<uint32_t>(*x.face_index(1, e)));
            }
        } else {
            for (Vertex v : tri)
                vars.push_back(static_cast<uint32_t>(*x.face_index(0, {v})));
        }
        sys.add_equation(std::move(vars), beta.chain.coeffs.get(t) ? 1 : 0);
    }
    return sys;
}

size_t violated_count(const XorSystem& sys, const Assignment& a) {
    if (a.values.size() != sys.n_vars) throw DimensionError("assignment length mismatch");
    size_t bad = 0;
    for (const XorEquation& eq : sys.equations) {
        unsigned parity = 0;
        for (uint32_t v : eq.vars) parity ^= a.values.get(v) ? 1u : 0u;
        if (parity != eq.rhs) ++bad;
    }
    return bad;
}

Fraction violated_fraction(const XorSystem& sys, const Assignment& a) {
    if (sys.equations.empty()) throw DimensionError("violated fraction of an empty system");
    return Fraction(static_cast<int64_t>(violated_count(sys, a)),
                    static_cast<int64_t>(sys.equations.size()));
}

namespace {

struct OptScan {
    size_t viol = SIZE_MAX;
    uint64_t argmin = 0;
};

void scan_assignments(const std::vector<uint64_t>& masks, const std::vector<uint8_t>& rhs,
                      uint64_t lo, uint64_t hi, OptScan& best) {
    for (uint64_t a = lo; a < hi; ++a) {
        size_t bad = 0;
        for (size_t e = 0; e < masks.size(); ++e)
            bad += static_cast<size_t>((std::popcount(masks[e] & a) & 1) != rhs[e]);
        if (bad < best.viol) {
            best.viol = bad;
            best.argmin = a;
        }
    }
}

}  // namespace

Optimum exhaustive_optimum(const XorSystem& sys, uint64_t budget, unsigned threads) {
    if (sys.equations.empty()) throw DimensionError("optimum of an empty system");
    if (sys.n_vars >= 63 || (uint64_t(1) << sys.n_vars) > budget)
        throw BudgetExceeded("full enumeration needs 2^" + std::to_string(sys.n_vars) +
                             " assignments, budget is " + std::to_string(budget));
    std::vector<uint64_t> masks;
    std::vector<uint8_t> rhs;
    for (const XorEquation& eq : sys.equations) {
        uint64_t m = 0;
        for (uint32_t v : eq.vars) m |= uint64_t(1) << v;
        masks.push_back(m);
        rhs.push_back(eq.rhs);
    }
    uint64_t total = uint64_t(1) << sys.n_vars;
    unsigned nt = std::max(1u, threads);
    if (nt > total) nt = static_cast<unsigned>(total);
    std::vector<OptScan> part(nt);
    if (nt == 1) {
        scan_assignments(masks, rhs, 0, total, part[0]);
    } else {
        std::vector<std::thread> pool;
        uint64_t chunk = total / nt;
        for (unsigned t = 0; t < nt; ++t) {
            uint64_t lo = t * chunk;
            uint64_t hi = (t + 1 == nt) ? total : lo + chunk;
            pool.emplace_back(scan_assignments, std::cref(masks), std::cref(rhs), lo, hi,
                              std::ref(part[t]));
        }
        for (auto& th : pool) th.join();
    }
    OptScan best = part[0];
    for (unsigned t = 1; t < part.size(); ++t)
        if (part[t].viol < best.viol ||
            (part[t].viol == best.viol && part[t].argmin < best.argmin))
            best = part[t];
    Assignment a{BitVec(sys.n_vars)};
    for (uint32_t i = 0; i < sys.n_vars; ++i)
        if (best.argmin & (uint64_t(1) << i)) a.values.set(i, true);
    return Optimum{Fraction(static_cast<int64_t>(best.viol),
                            static_cast<int64_t>(sys.equations.size())),
                   std::move(a)};
}

Optimum optimum_via_coset(const SimplicialComplex& x, const Cocycle& beta, uint64_t budget,
                          unsigned threads) {
    if (x.dim() < 2) throw DimensionError("coset optimum requires a complex with triangles");
    if (beta.chain.dim != 2 || beta.chain.coeffs.size() != x.face_count(2))
        throw DimensionError("beta must be a 2-chain over the complex");
    const BitMatrix& delta1 = x.coboundary_matrix(1);
    std::vector<BitVec> b2 = column_space_basis(delta1);
    CosetMin cm = coset_min_weight(b2, beta.chain.coeffs, budget, threads);
    // The witness is delta(f) + beta for the optimal f; recover f.
    std::optional<BitVec> f = solve(delta1, cm.witness ^ beta.chain.coeffs);
    if (!f) throw std::logic_error("coset witness is not in the coboundary space");
    return Optimum{Fraction(static_cast<int64_t>(cm.weight),
                            static_cast<int64_t>(x.face_count(2))),
                   Assignment{*f}};
}

void write_xor(std::ostream& out, const XorSystem& sys) {
    for (const XorEquation& eq : sys.equations)
        if (eq.vars.size() != 3)
            throw DimensionError("instance format holds exactly three variables per equation");
    out << "c mode " << var_mode_name(sys.mode) << '\n';
    if (!sys.complex_digest.empty()) out << "c complex " << sys.complex_digest << '\n';
    if (!sys.beta_digest.empty()) out << "c beta " << sys.beta_digest << '\n';
    out << "p xor " << sys.n_vars << ' ' << sys.equations.size() << '\n';
    for (const XorEquation& eq : sys.equations)
        out << eq.vars[0] << ' ' << eq.vars[1] << ' ' << eq.vars[2] << ' ' << int(eq.rhs) << '\n';
}

XorSystem read_xor(std::istream& in) {
    XorSystem sys;
    std::string line;
    size_t lineno = 0;
    long n = -1, m = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == 'c') {
            std::istringstream cs(line);
            std::string c, key, value;
            cs >> c >> key >> value;
            if (key == "mode")
                sys.mode = var_mode_from_name(value);
            else if (key == "complex")
                sys.complex_digest = value;
            else if (key == "beta")
                sys.beta_digest = value;
            continue;
        }
        std::istringstream hs(line);
        std::string p, xorw;
        if (!(hs >> p >> xorw >> n >> m) || p != "p" || xorw != "xor" || n < 0 || m < 0)
            throw ParseError(lineno, "expected 'p xor <n_vars> <m>'");
        break;
    }
    if (n < 0) throw ParseError(lineno, "missing problem line");
    sys.n_vars = static_cast<uint32_t>(n);
    long seen = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        long v1, v2, v3, r;
        if (!(ls >> v1 >> v2 >> v3 >> r))
            throw ParseError(lineno, "expected '<v1> <v2> <v3> <rhs>'");
        std::string rest;
        if (ls >> rest) throw ParseError(lineno, "trailing tokens on equation line");
        if (v1 < 0 || v2 < 0 || v3 < 0 || v1 >= n || v2 >= n || v3 >= n)
            throw ParseError(lineno, "variable index out of range");
        if (!(v1 < v2 && v2 < v3))
            throw ParseError(lineno, "variables must be distinct and ascending");
        if (r != 0 && r != 1) throw ParseError(lineno, "rhs must be 0 or 1");
        sys.equations.push_back(XorEquation{{static_cast<uint32_t>(v1), static_cast<uint32_t>(v2),
                                             static_cast<uint32_t>(v3)},
                                            static_cast<uint8_t>(r)});
        ++seen;
    }
    if (seen != m) throw ParseError(lineno, "equation count does not match header");
    return sys;
}

}  // namespace xorgap
