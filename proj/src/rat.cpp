#include "frost/rat.hpp"

#include <cmath>

namespace frost {

Rat Rat::from_string(std::string_view s) {
    if (s.empty())
        throw ParseError("empty rational literal");
    std::string num, den = "1";
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        num = std::string(s);
    } else {
        num = std::string(s.substr(0, slash));
        den = std::string(s.substr(slash + 1));
    }
    auto is_int = [](const std::string& t) {
        if (t.empty())
            return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size())
            return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                return false;
        return true;
    };
    if (!is_int(num) || !is_int(den))
        throw ParseError("bad rational literal: " + std::string(s));
    mpq_class q;
    mpz_class n(num), d(den);
    if (d == 0)
        throw ParseError("zero denominator in rational literal: " + std::string(s));
    q = mpq_class(n) / mpq_class(d);
    return Rat(std::move(q));
}

Rat Rat::pow2(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0)
        return Rat(mpq_class(p));
    return Rat(mpq_class(1) / mpq_class(p));
}

std::string Rat::str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

bool Rat::is_dyadic() const {
    mpz_class d = v_.get_den();
    // den is a power of two iff it has a single set bit
    return mpz_popcount(d.get_mpz_t()) == 1;
}

long ceil_mul(const Rat& s, long n) {
    mpz_class num = s.raw().get_num() * n;
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), s.raw().get_den().get_mpz_t());
    if (!q.fits_slong_p())
        throw InvariantError("ceil_mul overflow");
    return q.get_si();
}

long least_pow2_le(const Rat& x) {
    if (x.sign() <= 0)
        throw InvariantError("least_pow2_le requires a positive rational");
    if (x >= Rat(1))
        return 0;
    // 2^{-k} <= num/den  <=>  den <= num * 2^k; bracket k by bit sizes.
    const mpz_class& num = x.raw().get_num();
    const mpz_class& den = x.raw().get_den();
    long k = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
    if (k < 0)
        k = 0;
    mpz_class shifted = num << static_cast<unsigned long>(k);
    while (shifted < den) {
        shifted <<= 1;
        ++k;
    }
    while (k > 0 && (num << static_cast<unsigned long>(k - 1)) >= den)
        --k;
    return k;
}

bool is_pow2_int(const Rat& d) {
    if (!d.is_integer() || d < Rat(2))
        return false;
    mpz_class n = d.raw().get_num();
    return mpz_popcount(n.get_mpz_t()) == 1;
}

double log2_approx(const Rat& x) {
    if (x.sign() <= 0)
        throw InvariantError("log2 of a non-positive rational");
    long en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, x.raw().get_num().get_mpz_t());
    double md = mpz_get_d_2exp(&ed, x.raw().get_den().get_mpz_t());
    return (std::log2(mn) + static_cast<double>(en)) -
           (std::log2(md) + static_cast<double>(ed));
}

} // namespace frost
