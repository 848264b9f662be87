#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace marketnet {

// Runtime-sized bitset used for adjacency rows and node sets in the clique and
// community code. Bit i lives in word i/64.
class Bitset {
  public:
    Bitset() = default;
    explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    std::size_t size() const { return bits_; }

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    bool none() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    // popcount(*this & other) without allocating.
    std::size_t count_and(const Bitset& other) const {
        std::size_t n = 0;
        for (std::size_t k = 0; k < words_.size(); ++k)
            n += static_cast<std::size_t>(std::popcount(words_[k] & other.words_[k]));
        return n;
    }

    bool intersects(const Bitset& other) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & other.words_[k]) return true;
        return false;
    }

    Bitset& operator&=(const Bitset& other) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
        return *this;
    }

    Bitset& operator|=(const Bitset& other) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
        return *this;
    }

    // *this &= ~other
    void and_not(const Bitset& other) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~other.words_[k];
    }

    friend Bitset operator&(Bitset a, const Bitset& b) {
        a &= b;
        return a;
    }

    bool operator==(const Bitset&) const = default;

    // Calls f(i) for every set bit, ascending.
    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            while (w) {
                f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

  private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace marketnet
