#include "tqsg/gf2.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tqsg {

BitVector PackedMatrix::row_as_bitvector(std::size_t i) const {
    BitVector v(cols_);
    std::memcpy(v.words(), row(i), words_ * sizeof(std::uint64_t));
    return v;
}

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols,
                           std::vector<std::vector<std::uint32_t>> supports)
    : rows_(rows), cols_(cols), supports_(std::move(supports)), packed_(rows, cols) {
    if (supports_.size() != rows_) throw std::invalid_argument("BinaryMatrix: support count != rows");
    for (std::size_t i = 0; i < rows_; ++i) {
        const auto& s = supports_[i];
        for (std::size_t t = 0; t < s.size(); ++t) {
            if (s[t] >= cols_) throw std::invalid_argument("BinaryMatrix: column index out of range");
            if (t > 0 && s[t] <= s[t - 1])
                throw std::invalid_argument("BinaryMatrix: row support not sorted/duplicate-free");
            packed_.set(i, s[t], true);
        }
    }
}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
    std::vector<std::vector<std::uint32_t>> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = {static_cast<std::uint32_t>(i)};
    return BinaryMatrix(n, n, std::move(s));
}

BinaryMatrix BinaryMatrix::zero(std::size_t rows, std::size_t cols) {
    return BinaryMatrix(rows, cols, std::vector<std::vector<std::uint32_t>>(rows));
}

BinaryMatrix BinaryMatrix::from_packed(const PackedMatrix& p) {
    std::vector<std::vector<std::uint32_t>> s(p.rows());
    for (std::size_t i = 0; i < p.rows(); ++i) {
        const std::uint64_t* r = p.row(i);
        for (std::size_t w = 0; w < p.words_per_row(); ++w) {
            std::uint64_t x = r[w];
            while (x) {
                s[i].push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(x)));
                x &= x - 1;
            }
        }
    }
    return BinaryMatrix(p.rows(), p.cols(), std::move(s));
}

BinaryMatrix BinaryMatrix::from_dense(const std::vector<std::vector<int>>& entries) {
    std::size_t rows = entries.size();
    std::size_t cols = rows ? entries[0].size() : 0;
    std::vector<std::vector<std::uint32_t>> s(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        if (entries[i].size() != cols) throw std::invalid_argument("from_dense: ragged rows");
        for (std::size_t j = 0; j < cols; ++j)
            if (entries[i][j]) s[i].push_back(static_cast<std::uint32_t>(j));
    }
    return BinaryMatrix(rows, cols, std::move(s));
}

std::size_t BinaryMatrix::max_row_weight() const {
    std::size_t m = 0;
    for (const auto& s : supports_) m = std::max(m, s.size());
    return m;
}

std::vector<std::size_t> BinaryMatrix::column_weights() const {
    std::vector<std::size_t> w(cols_, 0);
    for (const auto& s : supports_)
        for (auto j : s) ++w[j];
    return w;
}

std::size_t BinaryMatrix::max_column_weight() const {
    auto w = column_weights();
    return w.empty() ? 0 : *std::max_element(w.begin(), w.end());
}

std::size_t BinaryMatrix::nnz() const {
    std::size_t n = 0;
    for (const auto& s : supports_) n += s.size();
    return n;
}

BinaryMatrix BinaryMatrix::transposed() const {
    std::vector<std::vector<std::uint32_t>> s(cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (auto j : supports_[i]) s[j].push_back(static_cast<std::uint32_t>(i));
    return BinaryMatrix(cols_, rows_, std::move(s));
}

namespace {

// Block Gaussian elimination with 8-column panels and a 256-entry combination
// table (four-Russians style). Pivot search works on single block bytes, so
// rank-deficient panels cost byte scans rather than row operations. When
// `transform` is set, rows are augmented with an identity block and reduced to
// full RREF; otherwise only the echelon sweep below the frontier runs.
struct Elim {
    std::size_t rows, cols;
    std::size_t mwords;  // matrix words per row
    std::size_t stride;  // matrix + transform words per row
    bool transform;
    bool full_rref;
    std::vector<std::uint64_t> d;
    std::vector<std::uint32_t> pivot_cols;
    std::size_t rank = 0;

    Elim(std::size_t r, std::size_t c, bool with_transform)
        : rows(r),
          cols(c),
          mwords((c + 63) / 64),
          stride(mwords + (with_transform ? (r + 63) / 64 : 0)),
          transform(with_transform),
          full_rref(with_transform),
          d(r * stride, 0) {
        if (transform) {
            std::size_t twords = stride - mwords;
            for (std::size_t i = 0; i < rows; ++i)
                row(i)[mwords + (i >> 6)] = std::uint64_t(1) << (i & 63);
            (void)twords;
        }
    }

    std::uint64_t* row(std::size_t i) { return d.data() + i * stride; }

    void set_bit(std::size_t i, std::size_t j) { row(i)[j >> 6] |= std::uint64_t(1) << (j & 63); }

    unsigned block_byte(std::size_t i, std::size_t c0, unsigned width) const {
        const std::uint64_t* r = d.data() + i * stride;
        return static_cast<unsigned>((r[c0 >> 6] >> (c0 & 63)) & ((1u << width) - 1u));
    }

    void xor_rows(std::size_t dst, std::size_t src, std::size_t wstart) {
        std::uint64_t* a = row(dst);
        const std::uint64_t* b = row(src);
        for (std::size_t w = wstart; w < stride; ++w) a[w] ^= b[w];
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap_ranges(row(a), row(a) + stride, row(b));
    }

    void run() {
        std::size_t frontier = 0;
        std::size_t active = rows;  // rows beyond active are known all-zero (rank-only path)
        std::vector<std::uint64_t> table;
        std::vector<std::uint8_t> gather(256);

        for (std::size_t c0 = 0; c0 < cols && frontier < active; c0 += 8) {
            unsigned width = static_cast<unsigned>(std::min<std::size_t>(8, cols - c0));
            std::size_t wstart = c0 >> 6;

            // Pivot search: byte arithmetic only, full rows touched only when
            // a row is promoted to pivot.
            unsigned found = 0;
            unsigned piv_bits[8];    // block-column position of each pivot
            unsigned piv_bytes[8];   // pivot rows' block bytes, progressively reduced
            for (unsigned j = 0; j < width && frontier + found < active; ++j) {
                std::size_t hit = active;
                for (std::size_t i = frontier + found; i < active; ++i) {
                    unsigned b = block_byte(i, c0, width);
                    for (unsigned l = 0; l < found; ++l)
                        if ((b >> piv_bits[l]) & 1u) b ^= piv_bytes[l];
                    if ((b >> j) & 1u) {
                        hit = i;
                        break;
                    }
                }
                if (hit == active) continue;
                // Materialize the byte reduction on the full row, then promote.
                unsigned b = block_byte(hit, c0, width);
                for (unsigned l = 0; l < found; ++l)
                    if ((b >> piv_bits[l]) & 1u) {
                        b ^= piv_bytes[l];
                        xor_rows(hit, frontier + l, wstart);
                    }
                swap_rows(hit, frontier + found);
                piv_bits[found] = j;
                piv_bytes[found] = b;
                ++found;
            }
            if (found == 0) continue;

            // Mutual reduction: clear later pivot columns inside pivot rows so
            // each pivot row owns exactly one pivot-column bit.
            for (unsigned l = found; l-- > 0;) {
                for (unsigned l2 = l + 1; l2 < found; ++l2) {
                    if ((piv_bytes[l] >> piv_bits[l2]) & 1u) {
                        piv_bytes[l] ^= piv_bytes[l2];
                        xor_rows(frontier + l, frontier + l2, wstart);
                    }
                }
            }

            // Combination table over the found pivot rows, Gray-coded.
            std::size_t twords = stride - wstart;
            table.assign(std::size_t(1) << found, 0);  // placeholder sizing below
            table.assign((std::size_t(1) << found) * twords, 0);
            for (std::size_t g = 1; g < (std::size_t(1) << found); ++g) {
                unsigned bit = static_cast<unsigned>(std::countr_zero(g));
                const std::uint64_t* src = row(frontier + bit) + wstart;
                std::uint64_t* dst = table.data() + g * twords;
                const std::uint64_t* prev = table.data() + (g ^ (std::size_t(1) << bit)) * twords;
                for (std::size_t w = 0; w < twords; ++w) dst[w] = prev[w] ^ src[w];
            }
            for (unsigned b = 0; b < 256; ++b) {
                unsigned idx = 0;
                for (unsigned l = 0; l < found; ++l) idx |= ((b >> piv_bits[l]) & 1u) << l;
                gather[b] = static_cast<std::uint8_t>(idx);
            }

            // Sweep: clear the panel in every non-pivot row with one table XOR.
            if (full_rref) {
                for (std::size_t i = 0; i < active; ++i) {
                    if (i >= frontier && i < frontier + found) continue;
                    unsigned idx = gather[block_byte(i, c0, width)];
                    if (!idx) continue;
                    std::uint64_t* r = row(i) + wstart;
                    const std::uint64_t* t = table.data() + std::size_t(idx) * twords;
                    for (std::size_t w = 0; w < twords; ++w) r[w] ^= t[w];
                }
            } else {
                for (std::size_t i = active; i-- > frontier + found;) {
                    unsigned idx = gather[block_byte(i, c0, width)];
                    std::uint64_t acc = 0;
                    std::uint64_t* r = row(i) + wstart;
                    if (idx) {
                        const std::uint64_t* t = table.data() + std::size_t(idx) * twords;
                        for (std::size_t w = 0; w < twords; ++w) {
                            r[w] ^= t[w];
                            acc |= r[w];
                        }
                    } else {
                        for (std::size_t w = 0; w < twords; ++w) acc |= r[w];
                    }
                    if (!acc) swap_rows(i, --active);  // rows left of the panel are already zero
                }
            }

            for (unsigned l = 0; l < found; ++l)
                pivot_cols.push_back(static_cast<std::uint32_t>(c0 + piv_bits[l]));
            frontier += found;
        }
        rank = frontier;
    }
};

Elim eliminate(const BinaryMatrix& m, bool with_transform, bool transpose_input) {
    std::size_t r = transpose_input ? m.cols() : m.rows();
    std::size_t c = transpose_input ? m.rows() : m.cols();
    Elim e(r, c, with_transform);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (auto j : m.row_support(i)) {
            if (transpose_input)
                e.set_bit(j, i);
            else
                e.set_bit(i, j);
        }
    e.run();
    return e;
}

}  // namespace

std::size_t rank(const BinaryMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    // Rank is transpose-invariant; the narrow orientation has fewer deficient
    // panels and shorter tails.
    bool transpose = m.cols() > m.rows();
    return eliminate(m, false, transpose).rank;
}

BitVector mat_vec(const BinaryMatrix& m, const BitVector& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("mat_vec: dimension mismatch");
    BitVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        unsigned parity = 0;
        for (auto j : m.row_support(i)) parity ^= static_cast<unsigned>(v.get(j));
        if (parity) out.set(i, true);
    }
    return out;
}

RowReduction row_reduce(const BinaryMatrix& m) {
    Elim e = eliminate(m, true, false);
    RowReduction rr;
    rr.rows = m.rows();
    rr.cols = m.cols();
    rr.rank = e.rank;
    rr.pivot_cols = e.pivot_cols;
    rr.rref = PackedMatrix(m.rows(), m.cols());
    rr.row_transform = PackedMatrix(m.rows(), m.rows());
    rr.transform_cols = PackedMatrix(m.rows(), m.rows());
    std::size_t twords = (m.rows() + 63) / 64;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::memcpy(rr.rref.row(i), e.row(i), rr.rref.words_per_row() * sizeof(std::uint64_t));
        std::memcpy(rr.row_transform.row(i), e.row(i) + e.mwords, twords * sizeof(std::uint64_t));
    }
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j)
            if (rr.row_transform.get(i, j)) rr.transform_cols.set(j, i, true);
    return rr;
}

std::vector<BitVector> kernel_basis(const BinaryMatrix& m) {
    if (m.cols() == 0) return {};
    if (m.rows() == 0) {
        std::vector<BitVector> basis;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            BitVector v(m.cols());
            v.set(j, true);
            basis.push_back(std::move(v));
        }
        return basis;
    }
    RowReduction rr = row_reduce(m);
    std::vector<char> is_pivot(m.cols(), 0);
    std::vector<std::size_t> pivot_row(m.cols(), 0);
    for (std::size_t i = 0; i < rr.rank; ++i) {
        is_pivot[rr.pivot_cols[i]] = 1;
        pivot_row[rr.pivot_cols[i]] = i;
    }
    std::vector<BitVector> basis;
    basis.reserve(m.cols() - rr.rank);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (is_pivot[j]) continue;
        BitVector v(m.cols());
        v.set(j, true);
        for (std::size_t i = 0; i < rr.rank; ++i)
            if (rr.rref.get(i, j)) v.set(rr.pivot_cols[i], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<BitVector> solve(const RowReduction& rr, const BitVector& s) {
    if (s.size() != rr.rows) throw std::invalid_argument("solve: syndrome length mismatch");
    // y = T*s via columns of T (rows of the stored transpose).
    BitVector y(rr.rows);
    std::size_t words = y.word_count();
    s.for_each_set([&](std::size_t j) {
        const std::uint64_t* col = rr.transform_cols.row(j);
        std::uint64_t* w = y.words();
        for (std::size_t t = 0; t < words; ++t) w[t] ^= col[t];
    });
    for (std::size_t i = rr.rank; i < rr.rows; ++i)
        if (y.get(i)) return std::nullopt;  // s outside Im(H)
    BitVector x(rr.cols);
    for (std::size_t i = 0; i < rr.rank; ++i)
        if (y.get(i)) x.set(rr.pivot_cols[i], true);
    return x;
}

BitVector coset_canonical(const RowReduction& rr, const BitVector& x) {
    if (x.size() != rr.cols) throw std::invalid_argument("coset_canonical: length mismatch");
    BitVector out = x;
    std::size_t words = out.word_count();
    for (std::size_t i = 0; i < rr.rank; ++i) {
        if (out.get(rr.pivot_cols[i])) {
            const std::uint64_t* r = rr.rref.row(i);
            std::uint64_t* w = out.words();
            for (std::size_t t = 0; t < words; ++t) w[t] ^= r[t];
        }
    }
    return out;
}

bool in_row_space(const RowReduction& rr, const BitVector& v) {
    return !coset_canonical(rr, v).any();
}

BinaryMatrix read_gf2(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("gf2 read: missing header");
    std::istringstream hs(line);
    std::string tag;
    std::size_t rows = 0, cols = 0;
    if (!(hs >> tag >> rows >> cols) || tag != "gf2")
        throw std::runtime_error("gf2 read: bad header: " + line);
    std::vector<std::vector<std::uint32_t>> supports(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!std::getline(in, line)) throw std::runtime_error("gf2 read: truncated matrix body");
        std::istringstream ls(line);
        std::uint32_t j;
        while (ls >> j) supports[i].push_back(j);
    }
    return BinaryMatrix(rows, cols, std::move(supports));
}

void write_gf2(std::ostream& out, const BinaryMatrix& m) {
    out << "gf2 " << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto& s = m.row_support(i);
        for (std::size_t t = 0; t < s.size(); ++t) {
            if (t) out << ' ';
            out << s[t];
        }
        out << '\n';
    }
}

BinaryMatrix read_gf2_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return read_gf2(f);
}

void write_gf2_file(const std::string& path, const BinaryMatrix& m) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    write_gf2(f, m);
}

}  // namespace tqsg
