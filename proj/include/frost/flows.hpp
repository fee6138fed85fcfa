#pragma once

#include <map>
#include <optional>
#include <vector>

#include "frost/dyadic.hpp"

namespace frost {

using WordMap = std::map<Word, Rat, ShortlexLess>;

// Nonnegative capacities on the words of the depth-truncated binary tree.
// Words absent from the map have capacity 0.
struct CapacityTree {
    long depth = 0;
    WordMap cap;

    Rat at(const Word& w) const {
        auto it = cap.find(w);
        return it == cap.end() ? Rat(0) : it->second;
    }
    void set(const Word& w, Rat v);
    void validate() const; // nonnegativity, depth bounds
};

// A flow: nonnegative labels with f(v) = f(v0) + f(v1) at every vertex
// above the truncation depth. Absent words carry 0.
struct TreeFlow {
    long depth = 0;
    WordMap flow;

    Rat at(const Word& w) const {
        auto it = flow.find(w);
        return it == flow.end() ? Rat(0) : it->second;
    }
    void set(const Word& w, Rat v);

    // First word violating conservation or nonnegativity, if any.
    std::optional<Word> conservation_violation() const;
    void validate() const;
};

// How a maximal flow splits its value among children when extracting a
// witness. Left-greedy saturates the left child first; proportional
// divides by the children's subtree values, keeping positive flow on every
// branch that can carry it.
enum class SplitStrategy { LeftGreedy, Proportional };

struct MaxFlowResult {
    Rat value;
    TreeFlow witness;
};

// Maximal flow below cap on the depth-truncated tree, leaves acting as
// capacity-bounded sinks: F(v) = cap(v) at leaves,
// F(v) = min(cap(v), F(v0) + F(v1)) internally; the witness is extracted
// top-down with the chosen splitting strategy.
MaxFlowResult truncated_max_flow(const CapacityTree& cap,
                                 SplitStrategy strategy = SplitStrategy::LeftGreedy);

// Minimal cut: an antichain separating the root from the leaves together
// with its capacity sum. Dual route to truncated_max_flow; on trees the two
// values agree exactly.
struct MinCutResult {
    Rat value;
    std::vector<Word> antichain;
};
MinCutResult min_cut(const CapacityTree& cap);

// The iteration a_0 = cap, a_{n+1}(v) = min(a_n(v), a_n(v0) + a_n(v1));
// pointwise nonincreasing, reaching the max-flow fixpoint after at most
// depth+1 rounds on a truncated tree.
WordMap max_flow_iterate(const CapacityTree& cap, long iterations);

// Concentrates a nonzero flow: returns g with g(e) = 1/2,
// f(e) * g <= f, and g(v) >= 2^{-2|v|-1} wherever g(v) > 0.
TreeFlow concentrate_flow(const TreeFlow& f);

struct NonZeroFlowResult {
    bool found = false;
    TreeFlow witness;  // valid when found: witness(e) = 2^{-k}, witness <= cap
    Rat bound;         // valid when refuted: the exact truncated max-flow value
};

// Guess-and-verify search for a flow of value 2^{-k} below cap. Refutation
// carries the exact truncated max-flow value, an upper bound for the root
// value of any flow below any extension of the truncated capacities.
NonZeroFlowResult nonzero_flow_search(const CapacityTree& cap, long k,
                                      SplitStrategy strategy = SplitStrategy::LeftGreedy);

} // namespace frost
