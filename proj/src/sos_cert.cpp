#include "xorgap/sos_cert.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace xorgap {

namespace {

std::string set_to_text(const std::vector<uint32_t>& s) {
    if (s.empty()) return "-";
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s[i]);
    }
    return out;
}

std::vector<uint32_t> set_from_text(const std::string& text, size_t lineno, uint32_t n_vars) {
    std::vector<uint32_t> s;
    if (text == "-") return s;
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw ParseError(lineno, "malformed set " + text);
        long v = std::stol(tok);
        if (v < 0 || static_cast<uint32_t>(v) >= n_vars)
            throw ParseError(lineno, "set member out of range");
        s.push_back(static_cast<uint32_t>(v));
    }
    if (!std::is_sorted(s.begin(), s.end()) ||
        std::adjacent_find(s.begin(), s.end()) != s.end())
        throw ParseError(lineno, "set members must be ascending and distinct");
    return s;
}

BitVec set_to_bits(const std::vector<uint32_t>& s, uint32_t n) {
    BitVec v(n);
    for (uint32_t x : s) v.set(x, true);
    return v;
}

BitVec symdiff_bits(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b, uint32_t n) {
    BitVec v = set_to_bits(a, n);
    for (uint32_t x : b) v.flip(x);
    return v;
}

struct UnionFind {
    std::vector<int32_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int32_t find(int32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int32_t a, int32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

std::optional<size_t> SosCertificate::set_index(const std::vector<uint32_t>& s) const {
    // graded-lex: all smaller sizes precede, then lex within the size
    auto cmp = [](const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    };
    auto it = std::lower_bound(sets.begin(), sets.end(), s, cmp);
    if (it != sets.end() && *it == s) return static_cast<size_t>(it - sets.begin());
    return std::nullopt;
}

std::vector<std::vector<uint32_t>> enumerate_sets(uint32_t n_vars, int t) {
    std::vector<std::vector<uint32_t>> sets;
    sets.push_back({});
    for (int k = 1; k <= t && k <= static_cast<int>(n_vars); ++k) {
        std::vector<uint32_t> cur(k);
        std::iota(cur.begin(), cur.end(), 0);
        while (true) {
            sets.push_back(cur);
            // next combination in lex order
            int i = k - 1;
            while (i >= 0 && cur[i] == n_vars - static_cast<uint32_t>(k - i)) --i;
            if (i < 0) break;
            ++cur[i];
            for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
        }
    }
    return sets;
}

uint64_t set_count_bound(uint32_t n_vars, int t) { return closure_size_bound(n_vars, t); }

SosCertificate build_certificate(const XorSystem& sys, int t, uint64_t budget) {
    if (t < 0) throw std::invalid_argument("certificate level must be nonnegative");
    uint64_t n_sets = set_count_bound(sys.n_vars, t);
    if (n_sets > budget)
        throw BudgetExceeded("certificate needs " + std::to_string(n_sets) +
                             " variable sets, budget is " + std::to_string(budget));
    auto closure = std::make_shared<ResolutionClosure>(close(sys, 2 * t, budget));
    if (closure->refuted())
        throw std::domain_error("system is refuted at width " + std::to_string(2 * t) +
                                "; no certificate exists at level " + std::to_string(t));

    SosCertificate cert;
    cert.t = t;
    cert.n_vars = sys.n_vars;
    cert.sets = enumerate_sets(sys.n_vars, t);
    cert.closure = closure;

    size_t n = cert.sets.size();
    UnionFind uf(n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            BitVec d = symdiff_bits(cert.sets[i], cert.sets[j], sys.n_vars);
            if (!closure->rhs_values(d).empty()) uf.unite(static_cast<int32_t>(i),
                                                          static_cast<int32_t>(j));
        }
    }

    // Lex-least member of each class is its representative.
    std::map<int32_t, size_t> rep_by_root;
    for (size_t i = 0; i < n; ++i) {
        int32_t r = uf.find(static_cast<int32_t>(i));
        auto it = rep_by_root.find(r);
        if (it == rep_by_root.end() ||
            std::lexicographical_compare(cert.sets[i].begin(), cert.sets[i].end(),
                                         cert.sets[it->second].begin(),
                                         cert.sets[it->second].end()))
            rep_by_root[r] = i;
    }
    std::map<int32_t, int32_t> class_id;
    cert.class_of.assign(n, -1);
    for (size_t i = 0; i < n; ++i) {
        int32_t r = uf.find(static_cast<int32_t>(i));
        auto it = class_id.find(r);
        int32_t cid;
        if (it == class_id.end()) {
            cid = static_cast<int32_t>(cert.rep_of_class.size());
            class_id[r] = cid;
            cert.rep_of_class.push_back(static_cast<int32_t>(rep_by_root[r]));
        } else {
            cid = it->second;
        }
        cert.class_of[i] = cid;
    }

    // Sign of S: the unique rhs of the closure equation on S delta R(S).
    // Refutation-freeness guarantees uniqueness; absence would mean the
    // closure is not actually closed.
    cert.sign_of.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
        size_t rep = static_cast<size_t>(cert.rep_of_class[cert.class_of[i]]);
        BitVec d = symdiff_bits(cert.sets[i], cert.sets[rep], sys.n_vars);
        std::vector<uint8_t> vals = closure->rhs_values(d);
        if (vals.size() != 1)
            throw std::logic_error("closure lacks a unique equation for a class member");
        cert.sign_of[i] = vals[0];
    }
    return cert;
}

int moment(const SosCertificate& cert, const std::vector<uint32_t>& s1,
           const std::vector<uint32_t>& s2) {
    if (s1.size() > static_cast<size_t>(cert.t) || s2.size() > static_cast<size_t>(cert.t))
        throw DimensionError("moment of sets larger than the certificate level");
    auto i1 = cert.set_index(s1), i2 = cert.set_index(s2);
    if (!i1 || !i2) throw DimensionError("set is not indexed by the certificate");
    if (cert.class_of[*i1] != cert.class_of[*i2]) return 0;
    return ((cert.sign_of[*i1] ^ cert.sign_of[*i2]) & 1) ? -1 : 1;
}

namespace {

int moment_by_index(const SosCertificate& cert, size_t i1, size_t i2) {
    if (cert.class_of[i1] != cert.class_of[i2]) return 0;
    return ((cert.sign_of[i1] ^ cert.sign_of[i2]) & 1) ? -1 : 1;
}

// The moment of a constraint T: directly when |T| <= t, through a half
// split when |T| <= 2t, otherwise from the closure equation on T (every
// axiom is in the closure, so built certificates always resolve). Returns
// 0 when undetermined.
int constraint_moment(const SosCertificate& cert, const std::vector<uint32_t>& T,
                      const ResolutionClosure* closure) {
    if (T.size() <= static_cast<size_t>(cert.t)) {
        auto it = cert.set_index(T);
        return it ? moment_by_index(cert, *it, 0) : 0;  // set 0 is the empty set
    }
    if (T.size() <= 2 * static_cast<size_t>(cert.t)) {
        std::vector<uint32_t> s1(T.begin(), T.begin() + T.size() / 2);
        std::vector<uint32_t> s2(T.begin() + T.size() / 2, T.end());
        auto i1 = cert.set_index(s1), i2 = cert.set_index(s2);
        if (i1 && i2) return moment_by_index(cert, *i1, *i2);
    }
    if (closure) {
        BitVec d = set_to_bits(T, cert.n_vars);
        std::vector<uint8_t> vals = closure->rhs_values(d);
        if (vals.size() == 1) return vals[0] ? -1 : 1;
    }
    return 0;
}

double min_eigenvalue(const SosCertificate& cert, size_t max_size) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < cert.sets.size(); ++i)
        if (cert.sets[i].size() <= max_size) idx.push_back(i);
    Eigen::MatrixXd g(idx.size(), idx.size());
    for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = 0; b < idx.size(); ++b)
            g(a, b) = moment_by_index(cert, idx[a], idx[b]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace

VerifyReport verify_certificate(const SosCertificate& cert, const XorSystem& sys,
                                uint64_t closure_budget, uint64_t seed,
                                uint64_t sample_quadruples) {
    VerifyReport rep;
    size_t n = cert.sets.size();
    if (n == 0 || !cert.sets[0].empty())
        throw std::invalid_argument("certificate must index the empty set first");

    // (b) unit norms: <u_S, u_S> = 1 structurally; checked anyway.
    rep.norms_ok = true;
    for (size_t i = 0; i < n; ++i)
        if (moment_by_index(cert, i, i) != 1) {
            rep.norms_ok = false;
            rep.violations.push_back(
                VerifyViolation{"norm", cert.sets[i], cert.sets[i], {}, {}});
        }

    // (a) consistency: equal symmetric differences must give equal moments.
    // Bucketing over all unordered pairs is the exhaustive check; any
    // violating quadruple shows up as two pairs in one bucket.
    uint64_t pair_count = static_cast<uint64_t>(n) * (n + 1) / 2;
    rep.consistency_exhaustive = pair_count <= 20000000ULL;
    struct BucketEntry {
        int value;
        size_t i, j;
    };
    std::unordered_map<BitVec, BucketEntry, BitVecHash> buckets;
    auto check_pair = [&](size_t i, size_t j) {
        BitVec d = symdiff_bits(cert.sets[i], cert.sets[j], cert.n_vars);
        int v = moment_by_index(cert, i, j);
        auto it = buckets.find(d);
        if (it == buckets.end()) {
            buckets.emplace(std::move(d), BucketEntry{v, i, j});
        } else if (it->second.value != v) {
            rep.violations.push_back(VerifyViolation{"consistency", cert.sets[it->second.i],
                                                     cert.sets[it->second.j], cert.sets[i],
                                                     cert.sets[j]});
        }
        ++rep.pairs_checked;
    };
    if (rep.consistency_exhaustive) {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) check_pair(i, j);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<size_t> pick(0, n - 1);
        for (uint64_t k = 0; k < sample_quadruples; ++k) check_pair(pick(rng), pick(rng));
    }

    // (c) objective: 1/2 + (1/2m) sum over constraints of
    // (-1)^{beta_T} <u_T, u_empty>, with the T-moment realized per
    // constraint_moment above.
    std::shared_ptr<const ResolutionClosure> closure = cert.closure;
    if (!closure) {
        bool needed = false;
        for (const XorEquation& eq : sys.equations)
            if (eq.vars.size() > 2 * static_cast<size_t>(cert.t)) needed = true;
        if (needed)
            closure = std::make_shared<ResolutionClosure>(close(sys, 2 * cert.t, closure_budget));
    }
    if (!sys.equations.empty()) {
        int64_t signed_sum = 0;
        bool all_defined = true;
        for (const XorEquation& eq : sys.equations) {
            int mu = constraint_moment(cert, eq.vars, closure.get());
            if (mu == 0) all_defined = false;
            int expected = eq.rhs ? -1 : 1;
            if (mu != expected)
                rep.violations.push_back(VerifyViolation{"constraint-moment", eq.vars, {}, {}, {}});
            signed_sum += (eq.rhs ? -1 : 1) * mu;
        }
        int64_t m = static_cast<int64_t>(sys.equations.size());
        rep.objective = Fraction(m + signed_sum, 2 * m);
        rep.objective_defined = all_defined;
        rep.objective_is_one = rep.objective == Fraction(1, 1);
    }

    // (d) numeric PSD of the Gram matrices; they are Gram by construction,
    // so a failure here is an implementation bug, not a math outcome.
    size_t dim_full = n;
    rep.min_eig_full = min_eigenvalue(cert, static_cast<size_t>(cert.t));
    rep.psd_full = rep.min_eig_full >= -1e-8 * static_cast<double>(dim_full);
    rep.min_eig_half = min_eigenvalue(cert, static_cast<size_t>(cert.t / 2));
    rep.psd_half = rep.min_eig_half >= -1e-8 * static_cast<double>(dim_full);

    rep.ok = rep.norms_ok && rep.violations.empty() && rep.psd_full && rep.psd_half;
    return rep;
}

void write_certificate(std::ostream& out, const SosCertificate& cert) {
    out << "t " << cert.t << '\n';
    for (size_t c = 0; c < cert.rep_of_class.size(); ++c)
        out << "class " << set_to_text(cert.sets[cert.rep_of_class[c]]) << '\n';
    for (size_t i = 0; i < cert.sets.size(); ++i)
        out << "set " << set_to_text(cert.sets[i]) << " class " << cert.class_of[i] << " sign "
            << int(cert.sign_of[i]) << '\n';
}

SosCertificate read_certificate(std::istream& in, uint32_t n_vars) {
    SosCertificate cert;
    cert.n_vars = n_vars;
    std::string line;
    size_t lineno = 0;
    std::vector<std::vector<uint32_t>> class_reps;
    struct SetLine {
        std::vector<uint32_t> s;
        int32_t cls;
        uint8_t sign;
    };
    std::vector<SetLine> set_lines;
    bool have_t = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "t") {
            if (!(ls >> cert.t) || cert.t < 0) throw ParseError(lineno, "invalid level");
            have_t = true;
        } else if (key == "class") {
            std::string text;
            if (!(ls >> text)) throw ParseError(lineno, "class requires a set");
            class_reps.push_back(set_from_text(text, lineno, n_vars));
        } else if (key == "set") {
            std::string text, classkw, signkw;
            long cls, sign;
            if (!(ls >> text >> classkw >> cls >> signkw >> sign) || classkw != "class" ||
                signkw != "sign")
                throw ParseError(lineno, "expected 'set <S> class <id> sign <b>'");
            if (cls < 0 || static_cast<size_t>(cls) >= class_reps.size())
                throw ParseError(lineno, "class id out of range");
            if (sign != 0 && sign != 1) throw ParseError(lineno, "sign must be 0 or 1");
            set_lines.push_back(SetLine{set_from_text(text, lineno, n_vars),
                                        static_cast<int32_t>(cls),
                                        static_cast<uint8_t>(sign)});
        } else {
            throw ParseError(lineno, "unknown certificate key: " + key);
        }
    }
    if (!have_t) throw ParseError(lineno, "certificate has no level line");
    cert.sets = enumerate_sets(n_vars, cert.t);
    if (set_lines.size() != cert.sets.size())
        throw ParseError(lineno, "certificate does not cover every set up to the level");
    cert.class_of.assign(cert.sets.size(), -1);
    cert.sign_of.assign(cert.sets.size(), 0);
    for (const SetLine& sl : set_lines) {
        auto idx = cert.set_index(sl.s);
        if (!idx) throw ParseError(lineno, "set line outside the level");
        if (cert.class_of[*idx] >= 0) throw ParseError(lineno, "duplicate set line");
        cert.class_of[*idx] = sl.cls;
        cert.sign_of[*idx] = sl.sign;
    }
    cert.rep_of_class.assign(class_reps.size(), -1);
    for (size_t c = 0; c < class_reps.size(); ++c) {
        auto idx = cert.set_index(class_reps[c]);
        if (!idx) throw ParseError(lineno, "class representative outside the level");
        cert.rep_of_class[c] = static_cast<int32_t>(*idx);
    }
    return cert;
}

}  // namespace xorgap
