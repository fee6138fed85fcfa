#include "doctest.h"

#include "frost/flows.hpp"
#include "test_util.hpp"

using namespace frost;
using namespace frost::testutil;

namespace {

CapacityTree uniform_caps(long depth) {
    CapacityTree t;
    t.depth = depth;
    for (long n = 0; n <= depth; ++n)
        for (const Word& w : words_at_depth(n))
            t.set(w, Rat::pow2(-n));
    return t;
}

// the two-level example: value 7/10
CapacityTree two_level_example() {
    CapacityTree t;
    t.depth = 2;
    t.set(Word(""), Rat(1));
    t.set(Word("0"), Rat(3, 10));
    t.set(Word("1"), Rat(1, 2));
    for (const Word& w : words_at_depth(2))
        t.set(w, Rat(1, 5));
    return t;
}

void check_flow_below(const TreeFlow& g, const CapacityTree& cap) {
    g.validate();
    for (const auto& [w, v] : g.flow)
        CHECK(v <= cap.at(w));
}

} // namespace

TEST_CASE("max flow: frozen examples") {
    CapacityTree zero;
    zero.depth = 3;
    MaxFlowResult res = truncated_max_flow(zero);
    CHECK(res.value == Rat(0));
    CHECK(res.witness.flow.empty());

    res = truncated_max_flow(two_level_example());
    CHECK(res.value == Rat(7, 10));
    check_flow_below(res.witness, two_level_example());
    // left-greedy witness
    CHECK(res.witness.at(Word("0")) == Rat(3, 10));
    CHECK(res.witness.at(Word("1")) == Rat(2, 5));
    CHECK(res.witness.at(Word("00")) == Rat(1, 5));
    CHECK(res.witness.at(Word("01")) == Rat(1, 10));

    for (long depth : {1L, 3L, 5L}) {
        CapacityTree caps = uniform_caps(depth);
        res = truncated_max_flow(caps);
        CHECK(res.value == Rat(1));
        for (long n = 0; n <= depth; ++n)
            for (const Word& w : words_at_depth(n))
                CHECK(res.witness.at(w) == Rat::pow2(-n));
    }
}

TEST_CASE("max flow: proportional witness spreads") {
    CapacityTree caps = uniform_caps(4);
    MaxFlowResult res = truncated_max_flow(caps, SplitStrategy::Proportional);
    CHECK(res.value == Rat(1));
    for (long n = 0; n <= 4; ++n)
        for (const Word& w : words_at_depth(n))
            CHECK(res.witness.at(w) == Rat::pow2(-n));
    check_flow_below(res.witness, caps);
}

TEST_CASE("min cut matches max flow with valid witnesses") {
    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 60; ++i) {
        long depth = 1 + static_cast<long>(i % 6);
        CapacityTree t = random_capacity_tree(rng, depth);
        MaxFlowResult mf = truncated_max_flow(t);
        MinCutResult mc = min_cut(t);
        CHECK(mf.value == mc.value);
        check_flow_below(mf.witness, t);
        CHECK(valid_cut(mc.antichain, depth));
        Rat sum(0);
        for (const Word& w : mc.antichain)
            sum += t.at(w);
        CHECK(sum == mc.value);
        if (depth <= 4)
            CHECK(brute_force_min_cut(t) == mf.value);
    }
}

TEST_CASE("max flow iteration: frozen examples") {
    // a capacity assignment that is already a flow stays fixed
    CapacityTree caps = uniform_caps(4);
    WordMap a = max_flow_iterate(caps, 7);
    for (long n = 0; n <= 4; ++n)
        for (const Word& w : words_at_depth(n))
            CHECK(a.at(w) == Rat::pow2(-n));

    // the decreasing path example: caps q_n = 1 + 2^{-n} on 1^n, else 0
    for (long depth : {1L, 2L, 4L, 8L}) {
        CapacityTree path;
        path.depth = depth;
        std::string bits;
        for (long n = 0; n <= depth; ++n) {
            path.set(Word(bits), Rat(1) + Rat::pow2(-n));
            bits += '1';
        }
        WordMap it = max_flow_iterate(path, depth + 1);
        CHECK(it.at(Word()) == Rat(1) + Rat::pow2(-depth));
    }

    // the two-level example reaches 7/10 after three rounds
    WordMap it = max_flow_iterate(two_level_example(), 3);
    CHECK(it.at(Word()) == Rat(7, 10));
}

TEST_CASE("max flow iteration: monotone, hits the DP fixpoint") {
    std::mt19937_64 rng(897201);
    for (int i = 0; i < 40; ++i) {
        long depth = 1 + static_cast<long>(i % 5);
        CapacityTree t = random_capacity_tree(rng, depth);
        WordMap prev = max_flow_iterate(t, 0);
        for (long k = 1; k <= depth + 2; ++k) {
            WordMap cur = max_flow_iterate(t, k);
            for (const auto& [w, v] : prev) {
                auto it = cur.find(w);
                CHECK((it == cur.end() ? Rat(0) : it->second) <= v);
            }
            prev = std::move(cur);
        }
        // fixpoint after depth+1 rounds equals the DP everywhere
        WordMap fix = max_flow_iterate(t, depth + 1);
        CapacityTree sub;
        for (long n = 0; n <= depth; ++n)
            for (const Word& w : words_at_depth(n)) {
                CapacityTree rooted; // DP value of the subtree at w
                rooted.depth = depth - n;
                for (long m = 0; m <= depth - n; ++m)
                    for (const Word& u : words_at_depth(m)) {
                        Word full(w.bits() + u.bits());
                        if (!t.at(full).is_zero())
                            rooted.set(u, t.at(full));
                    }
                Rat dp = truncated_max_flow(rooted).value;
                auto it = fix.find(w);
                CHECK((it == fix.end() ? Rat(0) : it->second) == dp);
            }
    }
}

TEST_CASE("concentrate flow: frozen examples") {
    // all mass on the all-ones path
    TreeFlow ones;
    ones.depth = 5;
    std::string bits;
    for (long n = 0; n <= 5; ++n) {
        ones.set(Word(bits), Rat(1));
        bits += '1';
    }
    TreeFlow g = concentrate_flow(ones);
    bits.clear();
    for (long n = 0; n <= 5; ++n) {
        CHECK(g.at(Word(bits)) == Rat(1, 2));
        bits += '1';
    }

    // mirrored: all mass on the zero path
    TreeFlow zeros;
    zeros.depth = 5;
    bits.clear();
    for (long n = 0; n <= 5; ++n) {
        zeros.set(Word(bits), Rat(1));
        bits += '0';
    }
    g = concentrate_flow(zeros);
    bits.clear();
    for (long n = 0; n <= 5; ++n) {
        CHECK(g.at(Word(bits)) == Rat(1, 2));
        bits += '0';
    }

    // uniform flow: the both-children case fires everywhere
    TreeFlow uniform;
    uniform.depth = 2;
    for (long n = 0; n <= 2; ++n)
        for (const Word& w : words_at_depth(n))
            uniform.set(w, Rat::pow2(-n));
    g = concentrate_flow(uniform);
    CHECK(g.at(Word("")) == Rat(1, 2));
    CHECK(g.at(Word("0")) == Rat(3, 8));
    CHECK(g.at(Word("1")) == Rat(1, 8));
    CHECK(g.at(Word("00")) == Rat(7, 32));
    CHECK(g.at(Word("01")) == Rat(5, 32));
    CHECK(g.at(Word("10")) == Rat(3, 32));
    CHECK(g.at(Word("11")) == Rat(1, 32));

    TreeFlow empty;
    empty.depth = 2;
    CHECK_THROWS_AS(concentrate_flow(empty), InvariantError);
}

TEST_CASE("concentrate flow: invariants on random flows") {
    std::mt19937_64 rng(55711);
    for (int i = 0; i < 60; ++i) {
        TreeFlow f = random_flow(rng, 6);
        TreeFlow g = concentrate_flow(f);
        g.validate();
        CHECK(g.at(Word()) == Rat(1, 2));
        Rat total = f.at(Word());
        for (long n = 0; n <= 6; ++n)
            for (const Word& w : words_at_depth(n)) {
                Rat gv = g.at(w);
                // f(e) g <= f
                CHECK(total * gv <= f.at(w));
                // concentration dichotomy
                if (!gv.is_zero())
                    CHECK(gv >= Rat::pow2(-2 * n - 1));
            }
    }
}

TEST_CASE("nonzero flow search") {
    CapacityTree caps = uniform_caps(4);
    NonZeroFlowResult res = nonzero_flow_search(caps, 1);
    REQUIRE(res.found);
    CHECK(res.witness.at(Word()) == Rat(1, 2));
    check_flow_below(res.witness, caps);

    CapacityTree zero;
    zero.depth = 4;
    res = nonzero_flow_search(zero, 3);
    CHECK(!res.found);
    CHECK(res.bound == Rat(0));

    // the left chain with caps 2^{-ceil(n/2)} bottlenecks at the leaf
    CapacityTree chain;
    chain.depth = 4;
    std::string bits;
    for (long n = 0; n <= 4; ++n) {
        chain.set(Word(bits), Rat::pow2(-(n + 1) / 2));
        bits += '0';
    }
    res = nonzero_flow_search(chain, 1);
    CHECK(!res.found);
    CHECK(res.bound == Rat(1, 4));

    res = nonzero_flow_search(chain, 2);
    REQUIRE(res.found);
    CHECK(res.witness.at(Word()) == Rat(1, 4));
    check_flow_below(res.witness, chain);
}
