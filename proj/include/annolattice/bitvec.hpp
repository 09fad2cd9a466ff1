#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "annolattice/bitkernels.hpp"

namespace annolattice {

// Fixed-size dynamic bitset used for incidence rows/columns, extents and
// intents. Bulk operations route through the runtime-selected kernels.
// Invariant: bits at positions >= size() are zero.
class BitVec {
public:
    static constexpr std::size_t kWordBits = 64;

    BitVec() = default;
    explicit BitVec(std::size_t nbits, bool fill = false)
        : bits_(nbits), words_((nbits + kWordBits - 1) / kWordBits, 0) {
        if (fill) set_all();
    }

    std::size_t size() const { return bits_; }
    std::size_t word_count() const { return words_.size(); }
    const std::uint64_t* data() const { return words_.data(); }

    bool test(std::size_t i) const {
        assert(i < bits_);
        return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
    }
    void set(std::size_t i) {
        assert(i < bits_);
        words_[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
    }
    void reset(std::size_t i) {
        assert(i < bits_);
        words_[i / kWordBits] &= ~(std::uint64_t{1} << (i % kWordBits));
    }

    void set_all() {
        for (auto& w : words_) w = ~std::uint64_t{0};
        mask_tail();
    }
    void reset_all() {
        for (auto& w : words_) w = 0;
    }

    std::size_t count() const {
        return kernels::active().popcount(words_.data(), words_.size());
    }
    bool none() const {
        return kernels::active().is_zero(words_.data(), words_.size());
    }
    bool any() const { return !none(); }
    bool all() const { return count() == bits_; }

    void intersect_with(const BitVec& o) {
        assert(bits_ == o.bits_);
        kernels::active().bit_and(words_.data(), words_.data(),
                                  o.words_.data(), words_.size());
    }
    void unite_with(const BitVec& o) {
        assert(bits_ == o.bits_);
        kernels::active().bit_or(words_.data(), words_.data(), o.words_.data(),
                                 words_.size());
    }
    void subtract(const BitVec& o) {
        assert(bits_ == o.bits_);
        kernels::active().bit_andnot(words_.data(), words_.data(),
                                     o.words_.data(), words_.size());
    }

    static BitVec intersection(const BitVec& a, const BitVec& b) {
        BitVec r = a;
        r.intersect_with(b);
        return r;
    }

    bool is_subset_of(const BitVec& o) const {
        assert(bits_ == o.bits_);
        return kernels::active().is_subset(words_.data(), o.words_.data(),
                                           words_.size());
    }
    std::size_t count_and(const BitVec& o) const {
        assert(bits_ == o.bits_);
        return kernels::active().popcount_and(words_.data(), o.words_.data(),
                                              words_.size());
    }

    friend bool operator==(const BitVec& a, const BitVec& b) {
        if (a.bits_ != b.bits_) return false;
        return kernels::active().equal(a.words_.data(), b.words_.data(),
                                       a.words_.size());
    }

    // True when this and o agree on all bit positions < nbits.
    bool equal_prefix(const BitVec& o, std::size_t nbits) const {
        assert(bits_ == o.bits_ && nbits <= bits_);
        std::size_t full = nbits / kWordBits;
        for (std::size_t w = 0; w < full; ++w)
            if (words_[w] != o.words_[w]) return false;
        std::size_t rem = nbits % kWordBits;
        if (rem) {
            std::uint64_t mask = (std::uint64_t{1} << rem) - 1;
            if ((words_[full] ^ o.words_[full]) & mask) return false;
        }
        return true;
    }

    // Any set bit at a position strictly greater than i.
    bool any_above(std::size_t i) const {
        std::size_t w = i / kWordBits, r = i % kWordBits;
        if (w >= words_.size()) return false;
        std::uint64_t high = r + 1 == kWordBits
                                 ? 0
                                 : words_[w] & ~((std::uint64_t{2} << r) - 1);
        if (high) return true;
        for (std::size_t k = w + 1; k < words_.size(); ++k)
            if (words_[k]) return true;
        return false;
    }

    // Compares the sets as ascending index sequences, lexicographically.
    // Returns <0, 0, >0.
    static int lex_index_compare(const BitVec& a, const BitVec& b) {
        assert(a.bits_ == b.bits_);
        for (std::size_t w = 0; w < a.words_.size(); ++w) {
            std::uint64_t diff = a.words_[w] ^ b.words_[w];
            if (!diff) continue;
            std::size_t d = w * kWordBits +
                            static_cast<std::size_t>(std::countr_zero(diff));
            bool a_has = a.test(d);
            const BitVec& other = a_has ? b : a;
            // The side holding the lowest differing index has the smaller
            // next element -- unless the other side is a strict prefix.
            if (other.any_above(d)) return a_has ? -1 : 1;
            return a_has ? 1 : -1;
        }
        return 0;
    }

    template <typename Fn>
    void for_each_set(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t rem = words_[w];
            while (rem) {
                std::size_t b = static_cast<std::size_t>(std::countr_zero(rem));
                fn(w * kWordBits + b);
                rem &= rem - 1;
            }
        }
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        out.reserve(8);
        for_each_set([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    std::size_t hash() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ bits_;
        for (std::uint64_t w : words_) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }

private:
    void mask_tail() {
        std::size_t rem = bits_ % kWordBits;
        if (rem && !words_.empty())
            words_.back() &= (std::uint64_t{1} << rem) - 1;
    }

    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitVecHash {
    std::size_t operator()(const BitVec& v) const { return v.hash(); }
};

}  // namespace annolattice
