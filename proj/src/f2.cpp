#include "xorgap/f2.hpp"

#include <algorithm>
#include <bit>
#include <thread>

namespace xorgap {

BitVec BitVec::from_string(std::string_view bits) {
    BitVec v(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            v.set(i, true);
        else if (bits[i] != '0')
            throw std::invalid_argument("bit string must contain only 0/1");
    }
    return v;
}

BitVec BitVec::from_support(size_t len, const std::vector<size_t>& ones) {
    BitVec v(len);
    for (size_t i : ones) {
        if (i >= len) throw DimensionError("support index out of range");
        v.set(i, true);
    }
    return v;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (len_ != o.len_) throw DimensionError("xor of bit vectors of different lengths");
    for (size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
}

size_t BitVec::weight() const {
    size_t n = 0;
    for (uint64_t w : words_) n += std::popcount(w);
    return n;
}

bool BitVec::is_zero() const {
    for (uint64_t w : words_)
        if (w) return false;
    return true;
}

bool BitVec::any_common(const BitVec& o) const {
    size_t n = std::min(words_.size(), o.words_.size());
    for (size_t w = 0; w < n; ++w)
        if (words_[w] & o.words_[w]) return true;
    return false;
}

uint64_t BitVec::dot(const BitVec& o) const {
    if (len_ != o.len_) throw DimensionError("dot of bit vectors of different lengths");
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & o.words_[w];
    return std::popcount(acc) & 1;
}

bool BitVec::lex_less(const BitVec& o) const {
    size_t n = std::min(words_.size(), o.words_.size());
    for (size_t w = 0; w < n; ++w) {
        uint64_t diff = words_[w] ^ o.words_[w];
        if (diff) {
            size_t bit = std::countr_zero(diff);
            return ((words_[w] >> bit) & 1) == 0;
        }
    }
    return len_ < o.len_;
}

std::vector<size_t> BitVec::support() const {
    std::vector<size_t> s;
    for (size_t w = 0; w < words_.size(); ++w) {
        uint64_t x = words_[w];
        while (x) {
            s.push_back(w * 64 + std::countr_zero(x));
            x &= x - 1;
        }
    }
    return s;
}

std::string BitVec::to_string() const {
    std::string s(len_, '0');
    for (size_t i = 0; i < len_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

uint64_t BitVec::hash() const {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (uint64_t w : words_) {
        for (int b = 0; b < 8; ++b) {
            h ^= (w >> (8 * b)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    }
    h ^= len_;
    h *= 0x100000001b3ULL;
    return h;
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_rows(std::vector<BitVec> rows) {
    BitMatrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows[0].size();
    for (const BitVec& r : rows)
        if (r.size() != m.cols_) throw DimensionError("matrix rows of unequal length");
    m.row_ = std::move(rows);
    return m;
}

BitVec BitMatrix::apply(const BitVec& x) const {
    if (x.size() != cols_) throw DimensionError("matrix-vector size mismatch");
    BitVec y(rows_);
    for (size_t r = 0; r < rows_; ++r)
        if (row_[r].dot(x)) y.set(r, true);
    return y;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c : row_[r].support()) t.set(c, r, true);
    return t;
}

namespace {

struct Echelon {
    std::vector<BitVec> rows;     // reduced rows, one per pivot
    std::vector<size_t> pivots;   // pivot column of each row, strictly increasing
};

// Reduced row echelon form; pivots are chosen lowest-column-first.
Echelon rref(const BitMatrix& m) {
    std::vector<BitVec> rows;
    rows.reserve(m.rows());
    for (size_t r = 0; r < m.rows(); ++r)
        if (!m.row(r).is_zero()) rows.push_back(m.row(r));

    Echelon e;
    size_t next = 0;
    for (size_t col = 0; col < m.cols() && next < rows.size(); ++col) {
        size_t pr = next;
        while (pr < rows.size() && !rows[pr].get(col)) ++pr;
        if (pr == rows.size()) continue;
        std::swap(rows[next], rows[pr]);
        for (size_t r = 0; r < rows.size(); ++r)
            if (r != next && rows[r].get(col)) rows[r] ^= rows[next];
        e.pivots.push_back(col);
        ++next;
    }
    rows.resize(next);
    e.rows = std::move(rows);
    return e;
}

// Residue of v modulo the row space of an echelon form.
BitVec reduce(const Echelon& e, BitVec v) {
    for (size_t r = 0; r < e.rows.size(); ++r)
        if (v.get(e.pivots[r])) v ^= e.rows[r];
    return v;
}

}  // namespace

size_t rank(const BitMatrix& m) { return rref(m).pivots.size(); }

std::optional<BitVec> solve(const BitMatrix& m, const BitVec& b) {
    if (b.size() != m.rows()) throw DimensionError("solve: rhs length != row count");
    // Eliminate the augmented system [M | b].
    std::vector<BitVec> rows;
    std::vector<uint8_t> rhs;
    for (size_t r = 0; r < m.rows(); ++r) {
        rows.push_back(m.row(r));
        rhs.push_back(b.get(r));
    }
    size_t next = 0;
    std::vector<size_t> pivots;
    for (size_t col = 0; col < m.cols() && next < rows.size(); ++col) {
        size_t pr = next;
        while (pr < rows.size() && !rows[pr].get(col)) ++pr;
        if (pr == rows.size()) continue;
        std::swap(rows[next], rows[pr]);
        std::swap(rhs[next], rhs[pr]);
        for (size_t r = 0; r < rows.size(); ++r)
            if (r != next && rows[r].get(col)) {
                rows[r] ^= rows[next];
                rhs[r] ^= rhs[next];
            }
        pivots.push_back(col);
        ++next;
    }
    for (size_t r = next; r < rows.size(); ++r)
        if (rhs[r] && rows[r].is_zero()) return std::nullopt;
    // Any remaining inconsistent rows would be nonzero only below pivots,
    // which full reduction rules out; rows past `next` are all zero rows.
    BitVec x(m.cols());
    for (size_t r = 0; r < pivots.size(); ++r)
        if (rhs[r]) x.set(pivots[r], true);
    return x;
}

std::vector<BitVec> kernel_basis(const BitMatrix& m) {
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : e.pivots) is_pivot[p] = true;
    std::vector<BitVec> basis;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        BitVec v(m.cols());
        v.set(f, true);
        for (size_t r = 0; r < e.rows.size(); ++r)
            if (e.rows[r].get(f)) v.set(e.pivots[r], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<BitVec> row_space_basis(const BitMatrix& m) { return rref(m).rows; }

std::vector<BitVec> column_space_basis(const BitMatrix& m) {
    return row_space_basis(m.transposed());
}

bool in_span(const std::vector<BitVec>& basis, const BitVec& v) {
    if (basis.empty()) return v.is_zero();
    Echelon e = rref(BitMatrix::from_rows(basis));
    return reduce(e, v).is_zero();
}

namespace {

// Value of the Gray code at index i.
inline uint64_t gray(uint64_t i) { return i ^ (i >> 1); }

BitVec combo_at(const std::vector<BitVec>& basis, const BitVec& target, uint64_t index) {
    BitVec v = target;
    uint64_t g = gray(index);
    while (g) {
        v ^= basis[std::countr_zero(g)];
        g &= g - 1;
    }
    return v;
}

void scan_range(const std::vector<BitVec>& basis, const BitVec& target, uint64_t lo, uint64_t hi,
                CosetMin& best) {
    BitVec cur = combo_at(basis, target, lo);
    best.weight = cur.weight();
    best.witness = cur;
    for (uint64_t i = lo + 1; i < hi; ++i) {
        cur ^= basis[std::countr_zero(i)];  // gray(i) ^ gray(i-1) == lowest set bit of i
        size_t w = cur.weight();
        if (w < best.weight || (w == best.weight && cur.lex_less(best.witness))) {
            best.weight = w;
            best.witness = cur;
        }
    }
}

}  // namespace

CosetMin coset_min_weight(const std::vector<BitVec>& span_basis, const BitVec& target,
                          uint64_t budget, unsigned threads) {
    size_t k = span_basis.size();
    for (const BitVec& b : span_basis)
        if (b.size() != target.size())
            throw DimensionError("coset_min_weight: basis/target length mismatch");
    if (k >= 63 || (uint64_t(1) << k) > budget)
        throw BudgetExceeded("coset enumeration needs 2^" + std::to_string(k) +
                             " combinations, budget is " + std::to_string(budget));
    uint64_t total = uint64_t(1) << k;
    unsigned nt = std::max(1u, threads);
    if (nt > total) nt = static_cast<unsigned>(total);
    if (nt == 1) {
        CosetMin best;
        scan_range(span_basis, target, 0, total, best);
        return best;
    }
    std::vector<CosetMin> part(nt);
    std::vector<std::thread> pool;
    uint64_t chunk = total / nt;
    for (unsigned t = 0; t < nt; ++t) {
        uint64_t lo = t * chunk;
        uint64_t hi = (t + 1 == nt) ? total : lo + chunk;
        pool.emplace_back(scan_range, std::cref(span_basis), std::cref(target), lo, hi,
                          std::ref(part[t]));
    }
    for (auto& th : pool) th.join();
    CosetMin best = part[0];
    for (unsigned t = 1; t < nt; ++t)
        if (part[t].weight < best.weight ||
            (part[t].weight == best.weight && part[t].witness.lex_less(best.witness)))
            best = part[t];
    return best;
}

}  // namespace xorgap
