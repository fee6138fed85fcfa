#include "doctest.h"

#include "frost/dyadic.hpp"
#include "frost/lower_real.hpp"
#include "frost/rat.hpp"

using namespace frost;

TEST_CASE("rationals are canonical and exact") {
    CHECK(Rat(6, 8).str() == "3/4");
    CHECK(Rat(-6, 8).str() == "-3/4");
    CHECK(Rat(6, -8).str() == "-3/4");
    CHECK(Rat(0, 5).str() == "0/1");
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(1, 3) * Rat(3, 7) == Rat(1, 7));
    CHECK(Rat(1, 3) - Rat(1, 2) == Rat(-1, 6));
    CHECK(Rat(2, 3) / Rat(4, 3) == Rat(1, 2));
    CHECK(Rat(1, 3) < Rat(1, 2));
    CHECK_THROWS_AS(Rat(1, 0), InvariantError);
    CHECK_THROWS_AS(Rat(1, 2) / Rat(0), InvariantError);
}

TEST_CASE("rational parsing round-trips") {
    for (const char* s : {"0/1", "1/1", "-3/4", "7/10", "1024/3", "-1/4096"}) {
        Rat r = Rat::from_string(s);
        CHECK(r.str() == s);
        CHECK(Rat::from_string(r.str()) == r);
    }
    CHECK(Rat::from_string("12/8") == Rat(3, 2));
    CHECK(Rat::from_string("5") == Rat(5));
    CHECK_THROWS_AS(Rat::from_string(""), ParseError);
    CHECK_THROWS_AS(Rat::from_string("1/0"), ParseError);
    CHECK_THROWS_AS(Rat::from_string("a/b"), ParseError);
    CHECK_THROWS_AS(Rat::from_string("1.5"), ParseError);
}

TEST_CASE("pow2 and friends") {
    CHECK(Rat::pow2(0) == Rat(1));
    CHECK(Rat::pow2(3) == Rat(8));
    CHECK(Rat::pow2(-3) == Rat(1, 8));
    CHECK(Rat::pow2(-70).str() == "1/1180591620717411303424");

    CHECK(ceil_mul(Rat(1, 2), 3) == 2);
    CHECK(ceil_mul(Rat(1, 2), 4) == 2);
    CHECK(ceil_mul(Rat(1), 5) == 5);
    CHECK(ceil_mul(Rat(0), 7) == 0);
    CHECK(ceil_mul(Rat(3, 4), 10) == 8);

    CHECK(least_pow2_le(Rat(1)) == 0);
    CHECK(least_pow2_le(Rat(2)) == 0);
    CHECK(least_pow2_le(Rat(1, 2)) == 1);
    CHECK(least_pow2_le(Rat(1, 3)) == 2);
    CHECK(least_pow2_le(Rat(1, 4)) == 2);
    CHECK(least_pow2_le(Rat(3, 7)) == 2);
    CHECK_THROWS_AS(least_pow2_le(Rat(0)), InvariantError);

    CHECK(is_pow2_int(Rat(2)));
    CHECK(is_pow2_int(Rat(4)));
    CHECK(!is_pow2_int(Rat(3)));
    CHECK(!is_pow2_int(Rat(1)));
    CHECK(!is_pow2_int(Rat(5, 2)));

    CHECK(log2_approx(Rat(8)) == doctest::Approx(3.0));
    CHECK(log2_approx(Rat(1, 8)) == doctest::Approx(-3.0));
    CHECK(log2_approx(Rat(3)) == doctest::Approx(1.5849625007211562));

    CHECK(Rat(1, 2).is_dyadic());
    CHECK(Rat(0).is_dyadic());
    CHECK(Rat(3, 8).is_dyadic());
    CHECK(!Rat(1, 3).is_dyadic());
    CHECK(!Rat(1, 6).is_dyadic());
}

TEST_CASE("interval of a word") {
    CHECK(Word("").interval().lo == Rat(0));
    CHECK(Word("").interval().hi == Rat(1));
    CHECK(Word("0").interval().lo == Rat(0));
    CHECK(Word("0").interval().hi == Rat(1, 2));
    // binary value 5 at depth 3
    CHECK(Word("101").interval().lo == Rat(5, 8));
    CHECK(Word("101").interval().hi == Rat(3, 4));
    CHECK_THROWS_AS(Word("012"), ParseError);
}

TEST_CASE("children tile the parent exactly, depths up to 12") {
    for (long n = 0; n < 12; ++n) {
        for (const Word& w : words_at_depth(n)) {
            Interval iv = w.interval();
            Interval l = w.child(0).interval();
            Interval r = w.child(1).interval();
            CHECK(l.lo == iv.lo);
            CHECK(l.hi == r.lo); // overlap only at the midpoint
            CHECK(l.hi == iv.midpoint());
            CHECK(r.hi == iv.hi);
            CHECK(iv.length() == Rat::pow2(-n));
        }
    }
}

TEST_CASE("shortlex order and prefixes") {
    ShortlexLess less;
    CHECK(less(Word(""), Word("0")));
    CHECK(less(Word("1"), Word("00")));
    CHECK(less(Word("01"), Word("10")));
    CHECK(!less(Word("10"), Word("01")));
    CHECK(Word("01").is_prefix_of(Word("0110")));
    CHECK(!Word("11").is_prefix_of(Word("0110")));
    CHECK(Word("").is_prefix_of(Word("0")));
    CHECK(Word("0110").prefix(2) == Word("01"));
    CHECK(Word("0110").parent() == Word("011"));
}

TEST_CASE("binary chains, including the boundary-atom convention") {
    CHECK(binary_chain_prefix(Rat(0), 5) == Word("00000"));
    CHECK(binary_chain_prefix(Rat(1), 5) == Word("11111"));
    CHECK(binary_chain_prefix(Rat(1, 2), 5) == Word("01111"));
    CHECK(binary_chain_prefix(Rat(3, 4), 5) == Word("10111"));
    // 1/3 = 0.010101...
    CHECK(binary_chain_prefix(Rat(1, 3), 6) == Word("010101"));
    CHECK(binary_chain_prefix(Rat(2, 3), 6) == Word("101010"));
}

TEST_CASE("lower reals are stagewise monotone") {
    LowerRealApprox c = LowerRealApprox::constant(Rat(1, 3));
    CHECK(lower_real_value(c, 5) == Rat(1, 3));
    CHECK(!monotonicity_violation(c, 100));

    LowerRealApprox geo{[](long t) { return Rat(1) - Rat::pow2(-t); }};
    CHECK(lower_real_value(geo, 3) == Rat(7, 8));
    CHECK(!monotonicity_violation(geo, 100));

    // partial geometric sums: sum_{i<=t} 2^{-i-1}
    LowerRealApprox partial{[](long t) {
        Rat sum(0);
        for (long i = 0; i <= t; ++i)
            sum += Rat::pow2(-i - 1);
        return sum;
    }};
    CHECK(lower_real_value(partial, 2) == Rat(7, 8));
    CHECK(!monotonicity_violation(partial, 100));

    LowerRealApprox bad{[](long t) { return t == 3 ? Rat(0) : Rat(t); }};
    auto v = monotonicity_violation(bad, 10);
    REQUIRE(v.has_value());
    CHECK(*v == 2);
}
