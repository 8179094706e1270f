#ifndef MDSKIT_BITSET_HPP
#define MDSKIT_BITSET_HPP

#include <cstdint>
#include <vector>

namespace mdskit {

// Fixed-capacity dynamic bitset. All binary operations require equal sizes.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int n) : nbits_(n), words_((n + 63) / 64, 0) {}

    int size() const { return nbits_; }

    void set(int i) { words_[i >> 6] |= (uint64_t{1} << (i & 63)); }
    void reset(int i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    void clear() { for (auto& w : words_) w = 0; }

    int count() const {
        int c = 0;
        for (uint64_t w : words_) c += __builtin_popcountll(w);
        return c;
    }
    bool any() const {
        for (uint64_t w : words_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    Bitset& operator|=(const Bitset& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    // this \ o
    Bitset& subtract(const Bitset& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset minus(Bitset a, const Bitset& b) { return a.subtract(b); }

    bool operator==(const Bitset& o) const { return words_ == o.words_; }

    bool intersects(const Bitset& o) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    int count_and(const Bitset& o) const {
        int c = 0;
        for (size_t i = 0; i < words_.size(); ++i)
            c += __builtin_popcountll(words_[i] & o.words_[i]);
        return c;
    }
    int count_and(const Bitset& a, const Bitset& b) const {
        int c = 0;
        for (size_t i = 0; i < words_.size(); ++i)
            c += __builtin_popcountll(words_[i] & a.words_[i] & b.words_[i]);
        return c;
    }

    // First set bit at position >= from, or -1.
    int find_next(int from) const {
        if (from >= nbits_) return -1;
        int wi = from >> 6;
        uint64_t w = words_[wi] & (~uint64_t{0} << (from & 63));
        while (true) {
            if (w) return (wi << 6) + __builtin_ctzll(w);
            if (++wi >= (int)words_.size()) return -1;
            w = words_[wi];
        }
    }
    int find_first() const { return find_next(0); }

    template <class F>
    void for_each(F f) const {
        for (int v = find_first(); v >= 0; v = find_next(v + 1)) f(v);
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

private:
    int nbits_ = 0;
    std::vector<uint64_t> words_;
};

} // namespace mdskit

#endif
