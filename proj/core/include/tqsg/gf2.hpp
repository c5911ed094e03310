#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tqsg/bitvec.hpp"

namespace tqsg {

/// Row-major bit-packed GF(2) matrix. Workhorse representation for
/// elimination and for large derived matrices (RREF, row transforms)
/// whose rows are too dense for index lists.
class PackedMatrix {
public:
    PackedMatrix() = default;
    PackedMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return words_; }

    std::uint64_t* row(std::size_t i) { return data_.data() + i * words_; }
    const std::uint64_t* row(std::size_t i) const { return data_.data() + i * words_; }

    bool get(std::size_t i, std::size_t j) const { return (row(i)[j >> 6] >> (j & 63)) & 1u; }
    void set(std::size_t i, std::size_t j, bool b) {
        std::uint64_t mask = std::uint64_t(1) << (j & 63);
        if (b)
            row(i)[j >> 6] |= mask;
        else
            row(i)[j >> 6] &= ~mask;
    }

    BitVector row_as_bitvector(std::size_t i) const;

private:
    std::size_t rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<std::uint64_t> data_;
};

/// Sparse-canonical GF(2) matrix: per-row sorted column-index lists plus a
/// bit-packed mirror kept in sync (elimination is dense-friendly, iteration
/// sparse-friendly). Immutable after construction.
class BinaryMatrix {
public:
    BinaryMatrix() = default;

    /// supports must be sorted and duplicate-free per row, all indices < cols.
    BinaryMatrix(std::size_t rows, std::size_t cols, std::vector<std::vector<std::uint32_t>> supports);

    static BinaryMatrix identity(std::size_t n);
    static BinaryMatrix zero(std::size_t rows, std::size_t cols);
    static BinaryMatrix from_packed(const PackedMatrix& p);
    /// Dense row-major 0/1 initializer, for small literals in tests and docs.
    static BinaryMatrix from_dense(const std::vector<std::vector<int>>& entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<std::uint32_t>& row_support(std::size_t i) const { return supports_[i]; }
    const PackedMatrix& packed() const { return packed_; }

    bool get(std::size_t i, std::size_t j) const { return packed_.get(i, j); }

    std::size_t row_weight(std::size_t i) const { return supports_[i].size(); }
    std::size_t max_row_weight() const;
    std::vector<std::size_t> column_weights() const;
    std::size_t max_column_weight() const;
    std::size_t nnz() const;

    BinaryMatrix transposed() const;

    friend bool operator==(const BinaryMatrix& a, const BinaryMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.supports_ == b.supports_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::vector<std::uint32_t>> supports_;
    PackedMatrix packed_;
};

/// GF(2) row rank. Internally eliminates whichever orientation has fewer
/// columns (rank is transpose-invariant) with a block table kernel.
std::size_t rank(const BinaryMatrix& m);

/// y = m * v over GF(2); requires v.size() == m.cols().
BitVector mat_vec(const BinaryMatrix& m, const BitVector& v);

/// Basis of ker m: cols - rank(m) independent vectors v with m*v = 0.
std::vector<BitVector> kernel_basis(const BinaryMatrix& m);

/// Recorded elimination: row_transform * original == rref, so syndromes can
/// be solved repeatedly without re-eliminating.
struct RowReduction {
    std::size_t rows = 0, cols = 0;
    std::size_t rank = 0;
    std::vector<std::uint32_t> pivot_cols;
    PackedMatrix rref;
    PackedMatrix row_transform;
    PackedMatrix transform_cols;  // row_transform transposed; column access for sparse syndromes
};

RowReduction row_reduce(const BinaryMatrix& m);

/// Solves H x = s using the recorded reduction. Returns the pivot-column
/// representative (non-pivot coordinates zero); nullopt iff s is outside the
/// image of H.
std::optional<BitVector> solve(const RowReduction& rr, const BitVector& s);

/// Canonical coset representative of x modulo the row space of rr's matrix:
/// the unique element of x + rowspace with zeros at all pivot columns.
/// Two vectors are in the same coset iff their canonical representatives agree.
BitVector coset_canonical(const RowReduction& rr, const BitVector& x);

/// True iff v lies in the row space of the reduced matrix.
bool in_row_space(const RowReduction& rr, const BitVector& v);

// Matrix file format: header "gf2 <rows> <cols>", then one line per row with
// the sorted 0-based column indices of ones; an all-zero row is a blank line.
BinaryMatrix read_gf2(std::istream& in);
void write_gf2(std::ostream& out, const BinaryMatrix& m);
BinaryMatrix read_gf2_file(const std::string& path);
void write_gf2_file(const std::string& path, const BinaryMatrix& m);

}  // namespace tqsg
