#pragma once

#include <span>
#include <vector>

#include "frost/frostman.hpp"

namespace frost {

// Dyadic s-dimensional Hausdorff content of the stage-t approximation of A
// at a truncation depth: the minimum of sum 2^{-ceil(s |v|)} over dyadic
// antichain covers, computed by the min-cut recursion
//   content(v) = 0 on excluded words,
//   content(v) = 2^{-ceil(s n)} at depth n,
//   content(v) = min(2^{-ceil(s |v|)}, content(v0) + content(v1)) inside.
Rat dyadic_content(const ClosedSetName& a, const Rat& s, long depth, long stage);

struct DimEstimate {
    Rat lo, hi;
    long depth = 0;
    long stage = 0;
};

// Brackets the dimension on the grid {0, 1/grid, ..., 1}: hi is the least
// grid point whose content falls below hi_threshold (1 if none), lo the
// greatest one with content >= lo_threshold (0 if none). The thresholds
// are library conventions, not canonical constants; the defaults are
// lo_threshold = 1/2 and hi_threshold = 2^{-floor(depth/4)}.
DimEstimate dim_interval(const ClosedSetName& a, long depth, long stage, long grid);
DimEstimate dim_interval(const ClosedSetName& a, long depth, long stage, long grid,
                         const Rat& lo_threshold, const Rat& hi_threshold);

// Per-level values ln2/ln d_i and the running minima of their tails, the
// finite-stage proxy for liminf ln2/ln d_n. Display doubles; the only
// approximate surface in this module.
struct CantorDimRow {
    long level;
    double term;      // ln2 / ln d_level
    double tail_min;  // min of term over [level, n)
};
std::vector<CantorDimRow> cantor_dim_partial(const CantorScheme& scheme, long n);

// Probability measure on the scheme's cells that follows a fixed bit at
// square levels (level k*k uses bit k of p) and halves everywhere else.
// Mass is available in closed form; levels are materialized on demand.
class CellMeasure {
  public:
    CellMeasure(CantorScheme scheme, std::vector<int> p_bits, long depth);

    const CantorScheme& scheme() const { return scheme_; }
    long depth() const { return depth_; }

    // Mass of the cell [a_w, b_w]; zero when some square-level bit of w
    // disagrees with p.
    Rat mass(const Word& w) const;

    // All positive-mass cells of a level, in word order.
    std::vector<std::pair<Word, Rat>> level_masses(long level) const;

    // A canonical positive-mass chain: bit p(k) at square levels, 0 elsewhere.
    Word support_chain(long level) const;

  private:
    CantorScheme scheme_;
    std::vector<int> p_bits_; // p(1), p(2), ...
    long depth_;
};

CellMeasure shmerkin_measure(const std::vector<int>& p_bits, const CantorScheme& scheme,
                             long depth);

struct LocalDimRow {
    long level;
    double ratio; // log mass / log cell length, display approximation
};

// Local dimension along a chain: log2(mass of the level-m prefix) over
// log2(length of the level-m cell).
std::vector<LocalDimRow> local_dimension(const CellMeasure& mu, const Word& chain,
                                         std::span<const long> levels);
std::vector<LocalDimRow> local_dimension(const DyadicMeasure& mu, const Word& chain,
                                         std::span<const long> levels);

// Closed-form evaluation on any positive-mass chain of a Shmerkin cell
// measure; no chain or tree is materialized, so levels like 10^4 are fine.
std::vector<LocalDimRow> local_dimension_on_support(const CantorScheme& scheme,
                                                    std::span<const long> levels);

} // namespace frost
