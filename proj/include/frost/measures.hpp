#pragma once

#include <functional>
#include <vector>

#include "frost/flows.hpp"
#include "frost/lower_real.hpp"
#include "frost/sets.hpp"

namespace frost {

// Exact measure values on open dyadic intervals, truncated at a depth.
// Dyadic endpoints carry no mass, so a well-formed measure is additive:
// mass(v) = mass(v0) + mass(v1) above the truncation. measure_from_overt
// can produce a superadditive map when a certified word never receives a
// certified child (the surplus stands for mass not yet located); such
// measures are flagged by the additivity audit and rejected by
// measure_to_flow.
struct DyadicMeasure {
    long depth = 0;
    WordMap mass;

    Rat at(const Word& w) const {
        auto it = mass.find(w);
        return it == mass.end() ? Rat(0) : it->second;
    }
    void set(const Word& w, Rat v);
    Rat total() const { return at(Word()); }

    // First word w with mass(w) != mass(w0) + mass(w1), if any.
    std::optional<Word> additivity_violation() const;
    bool is_additive() const { return !additivity_violation().has_value(); }
};

// A measure known through monotone rational lower bounds for the mass of
// each open dyadic interval.
struct MeasureName {
    std::function<Rat(const Word&, long)> lower;
    Rat total_upper;
    bool boundary_atom = false; // set when a point measure sits on a dyadic rational

    LowerRealApprox interval_mass(const Word& w) const {
        auto f = lower;
        return LowerRealApprox{[f, w](long t) { return f(w, t); }};
    }
};

DyadicMeasure flow_to_measure(const TreeFlow& f);
TreeFlow measure_to_flow(const DyadicMeasure& mu); // rejects non-additive input

// Views a truncated exact measure as a name (bounds are exact up to the
// truncation depth, 0 below it).
MeasureName measure_name(const DyadicMeasure& mu);

// Positive-information support: w certified at stage t iff the stage-t
// lower bound for mass(w) is positive.
OvertSetName support_overt(const MeasureName& mu);
OvertSetName support_overt(const DyadicMeasure& mu);

// The staged construction of a measure with support inside the closure of
// an overt set: round r distributes fresh weight 2^{-r} over the level-r
// certified words (round-robin in word order, with repetitions), and each
// word's accumulated weight moves to its first certified child. Output is
// truncated at depth k with total sum_{r<=k, round r nonempty} 2^{-r}.
DyadicMeasure measure_from_overt(const OvertSetName& a, long k);

// Walks a chain of dyadic intervals with positive lower bounds; returns a
// word of the requested length. Throws StageExhausted if some level never
// shows a positive bound within the stage budget.
Word point_from_measure(const MeasureName& mu, long precision, long stage_budget);

// The point measure at x, under the chain convention at dyadic x: the
// name reports mass 1 exactly on the prefixes of the binary chain of x.
MeasureName point_measure(const Rat& x);

struct ConcentrateResult {
    DyadicMeasure nu;
    long k = 0;  // 2^{-k} <= total mass of the input
    Rat scale;   // C = 2^{-k}; nu is C-concentrated: mass > C r^2 or 0
};

// Extracts a nonzero concentrated measure nu <= mu: builds a flow of value
// 2^{-k} below mu, concentrates it, and scales back.
ConcentrateResult concentrate(const DyadicMeasure& mu);

// Names supp(nu) from both sides for a C-concentrated nu: certified iff
// mass > 0, excluded iff mass < C (2^{-|w|-1})^2 (which forces mass 0).
// The exclusion speaks about the open interval; a boundary point shared
// with a positive-mass neighbour may still lie in the support.
ClosedOvertName concentrated_support(const DyadicMeasure& nu, const Rat& c);

// Dyadic Frostman audit: every word of depth <= n with
// mass(w) > 2^{-ceil(s |w|)}, in breadth-first order. Empty result
// certifies the dyadic s-Frostman property.
std::vector<Word> frostman_check(const DyadicMeasure& mu, const Rat& s, long n);

} // namespace frost
