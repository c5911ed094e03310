#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tqsg {

/// Fixed-length vector over GF(2), packed 64 bits per word.
/// Bits beyond len are kept zero at all times.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {}

    static BitVector from_indices(std::size_t len, const std::vector<std::uint32_t>& ones) {
        BitVector v(len);
        for (auto i : ones) v.set(i, true);
        return v;
    }

    std::size_t size() const { return len_; }
    std::size_t word_count() const { return words_.size(); }
    const std::uint64_t* words() const { return words_.data(); }
    std::uint64_t* words() { return words_.data(); }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool b) {
        std::uint64_t mask = std::uint64_t(1) << (i & 63);
        if (b)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    void clear() { std::fill(words_.begin(), words_.end(), 0); }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }

    BitVector& operator^=(const BitVector& o) {
        if (o.len_ != len_) throw std::invalid_argument("BitVector xor: length mismatch");
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
        return *this;
    }

    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

    friend bool operator==(const BitVector& a, const BitVector& b) {
        return a.len_ == b.len_ && a.words_ == b.words_;
    }

    /// Parity of the overlap <a, b> over GF(2).
    static bool dot(const BitVector& a, const BitVector& b) {
        if (a.len_ != b.len_) throw std::invalid_argument("BitVector dot: length mismatch");
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < a.words_.size(); ++i) acc ^= a.words_[i] & b.words_[i];
        return std::popcount(acc) & 1;
    }

    std::vector<std::uint32_t> indices() const {
        std::vector<std::uint32_t> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t x = words_[w];
            while (x) {
                out.push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(x)));
                x &= x - 1;
            }
        }
        return out;
    }

    template <typename F>
    void for_each_set(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t x = words_[w];
            while (x) {
                f(w * 64 + std::countr_zero(x));
                x &= x - 1;
            }
        }
    }

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace tqsg
