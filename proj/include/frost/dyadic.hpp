#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "frost/rat.hpp"

namespace frost {

// Closed rational interval [lo, hi]. Open-interval predicates are spelled
// out as free functions so callers always say which convention they mean.
struct Interval {
    Rat lo, hi;
    Rat length() const { return hi - lo; }
    Rat midpoint() const { return (lo + hi) / Rat(2); }
};

inline bool open_contains(const Interval& o, const Rat& x) { return o.lo < x && x < o.hi; }
inline bool closed_contains(const Interval& c, const Rat& x) { return c.lo <= x && x <= c.hi; }
inline bool open_meets_closed(const Interval& o, const Interval& c) {
    return c.lo < o.hi && o.lo < c.hi;
}
inline bool closed_meets_closed(const Interval& a, const Interval& b) {
    return a.lo <= b.hi && b.lo <= a.hi;
}
inline bool open_contains_closed(const Interval& o, const Interval& c) {
    return o.lo < c.lo && c.hi < o.hi;
}
inline bool closed_contains_closed(const Interval& outer, const Interval& inner) {
    return outer.lo <= inner.lo && inner.hi <= outer.hi;
}

// A vertex of the infinite binary tree: a finite word over {0,1}.
// The associated closed dyadic interval is [k 2^{-n}, (k+1) 2^{-n}] where
// n is the depth and k the binary value of the word.
class Word {
  public:
    Word() = default;
    explicit Word(std::string bits) : bits_(std::move(bits)) { validate(); }

    static Word from_string(std::string_view s) { return Word(std::string(s)); }

    long depth() const { return static_cast<long>(bits_.size()); }
    bool empty() const { return bits_.empty(); }
    int bit(long i) const { return bits_[static_cast<std::size_t>(i)] == '1' ? 1 : 0; }

    Word child(int b) const { return Word(bits_ + (b ? '1' : '0'), unchecked{}); }
    Word parent() const {
        if (empty())
            throw InvariantError("root word has no parent");
        return Word(bits_.substr(0, bits_.size() - 1), unchecked{});
    }
    Word prefix(long n) const { return Word(bits_.substr(0, static_cast<std::size_t>(n)), unchecked{}); }

    bool is_prefix_of(const Word& w) const {
        return depth() <= w.depth() && w.bits_.compare(0, bits_.size(), bits_) == 0;
    }

    const std::string& bits() const { return bits_; }

    Interval interval() const {
        Rat lo(0);
        for (long i = 0; i < depth(); ++i)
            if (bit(i))
                lo += Rat::pow2(-(i + 1));
        return Interval{lo, lo + Rat::pow2(-depth())};
    }

    friend bool operator==(const Word& a, const Word& b) { return a.bits_ == b.bits_; }
    friend bool operator!=(const Word& a, const Word& b) { return a.bits_ != b.bits_; }

  private:
    struct unchecked {};
    Word(std::string bits, unchecked) : bits_(std::move(bits)) {}
    void validate() const {
        for (char c : bits_)
            if (c != '0' && c != '1')
                throw ParseError("bad dyadic word: \"" + bits_ + "\"");
    }
    std::string bits_;
};

// Breadth-first order: by depth, then by binary value. This is the
// canonical enumeration order throughout the library.
struct ShortlexLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.depth() != b.depth())
            return a.depth() < b.depth();
        return a.bits() < b.bits();
    }
};

inline Interval interval_of_word(const Word& w) { return w.interval(); }

// Length-n prefix of the binary expansion of x in [0,1], using the
// non-terminating expansion at dyadic rationals (1/2 -> 0111..., 0 -> 000...,
// 1 -> 111...). This is the boundary-atom chain convention.
Word binary_chain_prefix(const Rat& x, long n);

// All 2^n words of a given depth, in value order.
std::vector<Word> words_at_depth(long n);

} // namespace frost
