#pragma once
#include <cstddef>
#include <cstdint>
#include <vector>

namespace gg {

// Fixed-size dynamic bitset tuned for subgroup membership sets and adjacency
// rows.  std::vector<bool> is too slow for word-level ops and std::bitset
// needs a compile-time size.
class DynBitset {
public:
    DynBitset() = default;
    explicit DynBitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }
    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    DynBitset& operator|=(const DynBitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    DynBitset& operator&=(const DynBitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    bool operator==(const DynBitset& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const DynBitset& o) const { return !(*this == o); }

    bool is_subset_of(const DynBitset& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    bool intersects(const DynBitset& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    // Lexicographic order on member lists == order on words from the low end.
    bool lex_less(const DynBitset& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            if (w_[i] != o.w_[i]) {
                // smaller first-set-difference index wins
                std::uint64_t d = w_[i] ^ o.w_[i];
                std::uint64_t low = d & (~d + 1);
                return (w_[i] & low) != 0;
            }
        }
        return false;
    }

    std::size_t find_first() const { return find_next(0); }
    // first set bit at index >= from; size() if none
    std::size_t find_next(std::size_t from) const {
        if (from >= n_) return n_;
        std::size_t wi = from >> 6;
        std::uint64_t w = w_[wi] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w) return (wi << 6) + static_cast<std::size_t>(__builtin_ctzll(w));
            if (++wi >= w_.size()) return n_;
            w = w_[wi];
        }
    }

    template <typename F>
    void for_each_set(F&& f) const {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t w = w_[wi];
            while (w) {
                f((wi << 6) + static_cast<std::size_t>(__builtin_ctzll(w)));
                w &= w - 1;
            }
        }
    }

    std::size_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto w : w_) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h ^ n_);
    }

    const std::vector<std::uint64_t>& words() const { return w_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct DynBitsetHash {
    std::size_t operator()(const DynBitset& b) const { return b.hash(); }
};

} // namespace gg
