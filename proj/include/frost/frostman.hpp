#pragma once

#include "frost/measures.hpp"

namespace frost {

struct FrostmanTask {
    ClosedSetName set;
    Rat s;        // exponent in [0,1]
    long depth;   // truncation depth
    long stage;   // how much of the name to consult
    long k;       // precision: ask for a flow of value 2^{-k}
};

// The capacity tree for (A, s) at a truncation depth and stage:
// cap(w) = 2^{-ceil(s |w|)} while no prefix of w is excluded, 0 otherwise.
// The irrational weights 2^{-s n} are replaced by the exact dyadic
// 2^{-ceil(sn)} in [2^{-sn-1}, 2^{-sn}]; this changes max-flow values by at
// most a factor of 2 and preserves the Frostman bound.
CapacityTree capacity_tree(const ClosedSetName& a, const Rat& s, long depth, long stage);

struct FrostResult {
    bool found = false;
    DyadicMeasure measure; // valid when found; dyadic s-Frostman, vanishing on excluded words
    Rat bound;             // the truncated max-flow value (when refuted: < 2^{-k},
                           // an upper bound for the depth-n dyadic s-content)
};

// Frostman measure with support inside A, by nonzero-flow search on the
// capacity tree.
FrostResult frost(const FrostmanTask& task);

// Frostman measure with support exactly the scheme's set, at depth-n
// resolution: proportional max-flow on the scheme's interior capacity
// tree puts positive mass on precisely the words whose interior meets the
// set. Requires a dyadic-aligned scheme (all consulted ratios powers of
// two) so the interior test is decidable in closed form.
DyadicMeasure strict_frost(const CantorScheme& scheme, const Rat& s, long depth);

} // namespace frost
