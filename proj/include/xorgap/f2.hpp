#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xorgap/errors.hpp"

namespace xorgap {

// Fixed-length vector over F2, packed into 64-bit words. Addition is XOR,
// weight is popcount. Bits beyond len are kept zero at all times so that
// equality, hashing and weight can work word-wise.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(size_t len) : len_(len), words_((len + 63) / 64, 0) {}

    static BitVec from_string(std::string_view bits);  // "0110..."
    static BitVec from_support(size_t len, const std::vector<size_t>& ones);

    size_t size() const { return len_; }
    bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v)
            words_[i >> 6] |= m;
        else
            words_[i >> 6] &= ~m;
    }
    void flip(size_t i) { words_[i >> 6] ^= uint64_t(1) << (i & 63); }

    BitVec& operator^=(const BitVec& o);
    BitVec operator^(const BitVec& o) const {
        BitVec r = *this;
        r ^= o;
        return r;
    }

    size_t weight() const;
    bool is_zero() const;
    bool any_common(const BitVec& o) const;  // nonempty AND
    uint64_t dot(const BitVec& o) const;     // parity of <f,g>

    bool operator==(const BitVec& o) const { return len_ == o.len_ && words_ == o.words_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    // Bitstring order with index 0 most significant and 0 < 1. This is the
    // canonical tie-break for minimum-weight witnesses; it makes results
    // independent of enumeration order (and hence of the thread count).
    bool lex_less(const BitVec& o) const;

    std::vector<size_t> support() const;
    std::string to_string() const;
    uint64_t hash() const;

    const std::vector<uint64_t>& words() const { return words_; }

private:
    size_t len_ = 0;
    std::vector<uint64_t> words_;
};

struct BitVecHash {
    size_t operator()(const BitVec& v) const { return static_cast<size_t>(v.hash()); }
};

// Dense F2 matrix stored as bit-packed rows.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), row_(rows, BitVec(cols)) {}

    static BitMatrix identity(size_t n);
    static BitMatrix from_rows(std::vector<BitVec> rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool get(size_t r, size_t c) const { return row_[r].get(c); }
    void set(size_t r, size_t c, bool v) { row_[r].set(c, v); }
    const BitVec& row(size_t r) const { return row_[r]; }

    BitVec apply(const BitVec& x) const;  // y_r = <row_r, x>
    BitMatrix transposed() const;

    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && row_ == o.row_;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<BitVec> row_;
};

// Elimination always picks the lowest available column index as the next
// pivot, so every result below is deterministic and order-independent.
size_t rank(const BitMatrix& m);

// Some x with m*x = b (free variables set to zero), or nullopt when b is not
// in the column space.
std::optional<BitVec> solve(const BitMatrix& m, const BitVec& b);

// Basis of {x : m*x = 0}, one vector per free column in ascending column
// order. Size is always cols - rank. The basis matrix is in reduced echelon
// form with respect to the free columns.
std::vector<BitVec> kernel_basis(const BitMatrix& m);

// Nonzero rows of the reduced row echelon form.
std::vector<BitVec> row_space_basis(const BitMatrix& m);

// Basis of the column space (= row space of the transpose).
std::vector<BitVec> column_space_basis(const BitMatrix& m);

bool in_span(const std::vector<BitVec>& basis, const BitVec& v);

struct CosetMin {
    size_t weight = 0;
    BitVec witness;  // the minimum-weight member of target + span
};

// Exhaustive minimum of weight(target + s) over s in span(span_basis).
// Enumerates all 2^|span_basis| combinations (Gray code); throws
// BudgetExceeded unless 2^|span_basis| <= budget. Ties broken by lex_less,
// so the witness does not depend on thread count.
CosetMin coset_min_weight(const std::vector<BitVec>& span_basis, const BitVec& target,
                          uint64_t budget, unsigned threads = 1);

}  // namespace xorgap
