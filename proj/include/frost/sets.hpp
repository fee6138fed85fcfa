#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "frost/dyadic.hpp"

namespace frost {

// ---------------------------------------------------------------------------
// Stage-indexed names for subsets of [0,1].
//
// Names are pull-based oracles: callers ask "is w excluded at stage t?" /
// "which words are certified by stage t?". All constructors in this module
// produce monotone names (information only grows with the stage).
// ---------------------------------------------------------------------------

// Negative information. excluded(w, t) == true certifies that the open
// dyadic interval D_w° is disjoint from the set, derived from stage-t
// information. The predicate is monotone in t and closed under extension:
// once a word is excluded, so is every extension of it.
struct ClosedSetName {
    std::function<bool(const Word&, long)> excluded;
};

// Positive information. words(t) is the finite set of words certified to
// have D_w° touching the set by stage t; monotone in t. Constructors cap
// the listed depth by the stage so the set stays finite.
struct OvertSetName {
    std::function<std::vector<Word>(long)> words;

    bool certified(const Word& w, long t) const {
        for (const Word& u : words(t))
            if (u == w)
                return true;
        return false;
    }
};

// A set named from both sides at once.
struct ClosedOvertName {
    ClosedSetName closed;
    OvertSetName overt;
};

// ---------------------------------------------------------------------------
// Generalized Cantor schemes
// ---------------------------------------------------------------------------

// Ratio sequence (d_i) with d_i >= 2, generating the nested cell family
// [a_e,b_e] = [0,1], b_{w0} = a_w + d^{-1}(b_w - a_w),
// a_{w1} = a_w + (1 - d^{-1})(b_w - a_w). The represented set is the
// intersection of the level unions.
class CantorScheme {
  public:
    explicit CantorScheme(std::function<Rat(long)> ratio) : ratio_(std::move(ratio)) {}

    static CantorScheme constant(Rat d) {
        return CantorScheme([d](long) { return d; });
    }
    // Finite list; the last ratio repeats forever.
    static CantorScheme from_ratios(std::vector<Rat> ds);

    Rat ratio(long level) const {
        Rat d = ratio_(level);
        if (d < Rat(2))
            throw InvariantError("cantor scheme ratio below 2 at level " + std::to_string(level));
        return d;
    }

  private:
    std::function<Rat(long)> ratio_;
};

// The cell [a_w, b_w] of the scheme.
Interval cantor_cell(const CantorScheme& scheme, const Word& w);

// All 2^n level-n cells in word order.
std::vector<Interval> cantor_cells(const CantorScheme& scheme, long n);

// Does the stage-t approximation (union of level-t cells) meet the open
// interval iv?
bool stage_cells_meet_open(const CantorScheme& scheme, const Interval& iv, long stage);

// Does the represented set C itself meet the open interval? Decided by
// cell recursion; terminates for dyadic-aligned schemes and rational
// intervals, guarded by max_level.
bool scheme_meets_open(const CantorScheme& scheme, const Interval& iv, long max_level);

// Negative name of C: w excluded at stage t iff D_w° misses every level-t
// cell.
ClosedSetName closed_name(const CantorScheme& scheme);

// Positive name of C, witnessed by the left cell endpoints a_w with
// |w| <= t; lists certified words of depth <= t.
OvertSetName overt_name(const CantorScheme& scheme);

ClosedOvertName closed_overt_name(const CantorScheme& scheme);

// ---------------------------------------------------------------------------
// Canonical names for special sets
// ---------------------------------------------------------------------------

// The whole interval [0,1]: nothing excluded, every word certified at its
// own depth.
ClosedOvertName full_name();

// The empty set: every word excluded once the stage reaches its depth.
ClosedSetName empty_closed_name();

// Name of the point {x} under the boundary-atom chain convention: the
// binary chain of x (non-terminating expansion at dyadic x) is never
// excluded and is the certified chain. Off-chain words are excluded at the
// stage equal to their divergence depth.
ClosedOvertName point_chain_name(const Rat& x);

// Strict negative name of {x}: w is excluded as soon as x is not interior
// to D_w. For dyadic x (including 0 and 1) this eventually excludes every
// word; for non-dyadic x it coincides with the chain name's closed part.
ClosedSetName point_closed_name_strict(const Rat& x);

// ---------------------------------------------------------------------------
// Explicit (finite) names, used by JSON files and perfect_core output
// ---------------------------------------------------------------------------

// Words tagged with the stage from which they count.
using StagedWords = std::vector<std::pair<long, std::vector<Word>>>;

struct ExplicitName {
    StagedWords excluded;  // exclusion applies to the word and all extensions
    StagedWords certified;

    ClosedOvertName name() const;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Is the closed interval [lo, hi] (clipped to [0,1]) covered by closures of
// words excluded at stage t? Decided by aligned decomposition; words deeper
// than t are not consulted.
bool covered_by_excluded(const ClosedSetName& a, const Interval& iv, long t);

// Affine transport of a name from `source` onto `target`. A target word is
// excluded when its preimage is covered by excluded intervals; certified
// when its interior contains the image of a whole certified interval.
// Exclusion uses closures, so mass pinned exactly between two excluded
// intervals' shared endpoint can be lost; scheme and point-chain names do
// not hit this case.
ClosedOvertName rescale(const ClosedOvertName& a, const Interval& target);
ClosedOvertName rescale(const ClosedOvertName& a, const Interval& source, const Interval& target);

// {0} together with the i-th name rescaled into [2^{-2i-2}, 2^{-2i-1}].
// Stage t consults names 0..t only. The anchor chain towards 0 is never
// excluded.
ClosedOvertName assemble(std::vector<ClosedOvertName> names);
ClosedOvertName assemble(std::function<ClosedOvertName(long)> names, std::optional<long> count);

// ---------------------------------------------------------------------------
// PerfectCore
// ---------------------------------------------------------------------------

// A midpoint added by rule 4, with its isolation witness: the two open
// halves of the chosen interval are excluded around it.
struct AddedPoint {
    Rat x;
    Word cell;        // the interval L whose midpoint was added
    Word left_half;   // excluded
    Word right_half;  // excluded
    long stage;
};

struct PerfectCoreResult {
    ClosedOvertName name;
    std::vector<AddedPoint> added;
    // every decision: (word, stage, certified?) in the order taken
    std::vector<std::tuple<Word, long, bool>> decisions;
    long stage_budget = 0;
};

// Computes a closed-and-overt B = A ∪ X with every x in X isolated in B,
// by deciding dyadic intervals in breadth-first order, one per stage:
//   1. intervals containing a point of X are certified;
//   2. intervals known disjoint from A (and missing X) are excluded;
//   3. otherwise the interval is certified and monitored;
//   4. when a monitored interval is refuted, a fresh sub-interval untouched
//      by previous decisions is found, its midpoint joins X and its two
//      open halves are excluded.
// Decisions are final; the result records them with their stages.
PerfectCoreResult perfect_core(const ClosedSetName& a, long stage_budget);

// ---------------------------------------------------------------------------
// Audits
// ---------------------------------------------------------------------------

// First word (depth <= max_depth) that is both certified and excluded at
// some stage <= max_stage, if any.
std::optional<Word> consistency_violation(const ClosedOvertName& n, long max_depth, long max_stage);

} // namespace frost
