#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "frost/errors.hpp"

namespace frost {

// Exact rational number in canonical form (gcd(num, den) = 1, den > 0).
// Every quantity in the library that is not an explicitly "approximate"
// display value is a Rat; there is no rounding anywhere.
class Rat {
  public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long num, long den) {
        if (den == 0)
            throw InvariantError("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    // Parses "p/q" (or a bare integer "p"); q must be nonzero.
    static Rat from_string(std::string_view s);

    // 2^e for any integer e (negative exponents allowed).
    static Rat pow2(long e);

    std::string str() const; // canonical "p/q", q >= 1

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    // True if the canonical denominator is a power of two.
    bool is_dyadic() const;

    // Display only; never used in core computations.
    double to_double() const { return v_.get_d(); }

    const mpq_class& raw() const { return v_; }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero())
            throw InvariantError("rational division by zero");
        return Rat(mpq_class(a.v_ / b.v_));
    }
    friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  private:
    mpq_class v_;
};

inline Rat min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a >= b ? a : b; }
inline Rat abs(const Rat& a) { return a.sign() < 0 ? -a : a; }

// ceil(s * n) computed exactly on the integers.
long ceil_mul(const Rat& s, long n);

// Least k >= 0 with 2^{-k} <= x; requires x > 0.
long least_pow2_le(const Rat& x);

// True if d is an integer power of two (2, 4, 8, ...).
bool is_pow2_int(const Rat& d);

// log2 of a positive rational as a double, accurate independent of
// magnitude (works for numbers like 2^{-4096}). Display only.
double log2_approx(const Rat& x);

} // namespace frost
