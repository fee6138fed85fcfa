#include "frost/dimension.hpp"

#include <cmath>
#include <functional>

namespace frost {

Rat dyadic_content(const ClosedSetName& a, const Rat& s, long depth, long stage) {
    if (s.sign() < 0 || s > Rat(1))
        throw InvariantError("dyadic_content: exponent outside [0,1]");
    std::function<Rat(const Word&)> content = [&](const Word& w) {
        if (a.excluded(w, stage))
            return Rat(0);
        Rat pw = Rat::pow2(-ceil_mul(s, w.depth()));
        if (w.depth() == depth)
            return pw;
        return min(pw, content(w.child(0)) + content(w.child(1)));
    };
    return content(Word());
}

DimEstimate dim_interval(const ClosedSetName& a, long depth, long stage, long grid) {
    return dim_interval(a, depth, stage, grid, Rat(1, 2), Rat::pow2(-(depth / 4)));
}

DimEstimate dim_interval(const ClosedSetName& a, long depth, long stage, long grid,
                         const Rat& lo_threshold, const Rat& hi_threshold) {
    if (grid < 1)
        throw InvariantError("dim_interval: grid must be >= 1");
    DimEstimate est;
    est.depth = depth;
    est.stage = stage;
    est.lo = Rat(0);
    est.hi = Rat(1);
    bool hi_found = false;
    for (long j = 0; j <= grid; ++j) {
        Rat s(j, grid);
        Rat c = dyadic_content(a, s, depth, stage);
        if (!hi_found && c < hi_threshold) {
            est.hi = s;
            hi_found = true;
        }
        if (c >= lo_threshold)
            est.lo = s;
    }
    if (est.lo > est.hi)
        est.lo = est.hi;
    return est;
}

std::vector<CantorDimRow> cantor_dim_partial(const CantorScheme& scheme, long n) {
    if (n < 1)
        throw InvariantError("cantor_dim_partial: need at least one level");
    std::vector<CantorDimRow> rows(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        rows[static_cast<std::size_t>(i)].level = i;
        rows[static_cast<std::size_t>(i)].term = 1.0 / log2_approx(scheme.ratio(i));
    }
    double running = rows.back().term;
    for (long i = n - 1; i >= 0; --i) {
        running = std::min(running, rows[static_cast<std::size_t>(i)].term);
        rows[static_cast<std::size_t>(i)].tail_min = running;
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Shmerkin cell measures
// ---------------------------------------------------------------------------

namespace {

bool is_square(long m) {
    if (m < 1)
        return false;
    long r = static_cast<long>(std::sqrt(static_cast<double>(m)));
    while (r * r > m)
        --r;
    while ((r + 1) * (r + 1) <= m)
        ++r;
    return r * r == m;
}

long isqrt(long m) {
    long r = static_cast<long>(std::sqrt(static_cast<double>(m)));
    while (r * r > m)
        --r;
    while ((r + 1) * (r + 1) <= m)
        ++r;
    return r;
}

} // namespace

CellMeasure::CellMeasure(CantorScheme scheme, std::vector<int> p_bits, long depth)
    : scheme_(std::move(scheme)), p_bits_(std::move(p_bits)), depth_(depth) {
    long need = isqrt(depth_);
    if (static_cast<long>(p_bits_.size()) < need)
        throw InvariantError("cell measure: bit sequence too short, missing square index " +
                             std::to_string(static_cast<long>(p_bits_.size()) + 1));
    for (int b : p_bits_)
        if (b != 0 && b != 1)
            throw InvariantError("cell measure: bits must be 0 or 1");
}

Rat CellMeasure::mass(const Word& w) const {
    if (w.depth() > depth_)
        throw InvariantError("cell measure queried below its depth");
    long halvings = 0;
    for (long m = 1; m <= w.depth(); ++m) {
        if (is_square(m)) {
            long k = isqrt(m);
            if (w.bit(m - 1) != p_bits_[static_cast<std::size_t>(k - 1)])
                return Rat(0);
        } else {
            ++halvings;
        }
    }
    return Rat::pow2(-halvings);
}

std::vector<std::pair<Word, Rat>> CellMeasure::level_masses(long level) const {
    if (level > depth_)
        throw InvariantError("cell measure queried below its depth");
    std::vector<Word> words{Word()};
    for (long m = 1; m <= level; ++m) {
        std::vector<Word> next;
        next.reserve(words.size() * 2);
        if (is_square(m)) {
            int b = p_bits_[static_cast<std::size_t>(isqrt(m) - 1)];
            for (const Word& w : words)
                next.push_back(w.child(b));
        } else {
            for (const Word& w : words) {
                next.push_back(w.child(0));
                next.push_back(w.child(1));
            }
        }
        words = std::move(next);
    }
    long halvings = 0;
    for (long m = 1; m <= level; ++m)
        if (!is_square(m))
            ++halvings;
    Rat v = Rat::pow2(-halvings);
    std::vector<std::pair<Word, Rat>> out;
    out.reserve(words.size());
    for (Word& w : words)
        out.emplace_back(std::move(w), v);
    return out;
}

Word CellMeasure::support_chain(long level) const {
    std::string bits;
    bits.reserve(static_cast<std::size_t>(level));
    for (long m = 1; m <= level; ++m)
        bits += is_square(m) && p_bits_[static_cast<std::size_t>(isqrt(m) - 1)] ? '1' : '0';
    return Word(bits);
}

CellMeasure shmerkin_measure(const std::vector<int>& p_bits, const CantorScheme& scheme,
                             long depth) {
    return CellMeasure(scheme, p_bits, depth);
}

// ---------------------------------------------------------------------------
// Local dimension
// ---------------------------------------------------------------------------

std::vector<LocalDimRow> local_dimension(const CellMeasure& mu, const Word& chain,
                                         std::span<const long> levels) {
    std::vector<LocalDimRow> rows;
    for (long m : levels) {
        if (m > chain.depth())
            throw InvariantError("local_dimension: chain shorter than level " + std::to_string(m));
        Word p = chain.prefix(m);
        Rat v = mu.mass(p);
        if (v.sign() <= 0)
            throw InvariantError("local_dimension: zero mass on the chain at level " +
                                 std::to_string(m));
        Interval cell = cantor_cell(mu.scheme(), p);
        rows.push_back(LocalDimRow{m, log2_approx(v) / log2_approx(cell.length())});
    }
    return rows;
}

std::vector<LocalDimRow> local_dimension(const DyadicMeasure& mu, const Word& chain,
                                         std::span<const long> levels) {
    std::vector<LocalDimRow> rows;
    for (long m : levels) {
        if (m > chain.depth())
            throw InvariantError("local_dimension: chain shorter than level " + std::to_string(m));
        Word p = chain.prefix(m);
        Rat v = mu.at(p);
        if (v.sign() <= 0)
            throw InvariantError("local_dimension: zero mass on the chain at level " +
                                 std::to_string(m));
        rows.push_back(LocalDimRow{m, log2_approx(v) / static_cast<double>(-m)});
    }
    return rows;
}

std::vector<LocalDimRow> local_dimension_on_support(const CantorScheme& scheme,
                                                    std::span<const long> levels) {
    long max_level = 0;
    for (long m : levels)
        max_level = std::max(max_level, m);
    // prefix sums of log2 d_i
    std::vector<double> log_len(static_cast<std::size_t>(max_level) + 1, 0.0);
    for (long i = 0; i < max_level; ++i)
        log_len[static_cast<std::size_t>(i + 1)] =
            log_len[static_cast<std::size_t>(i)] + log2_approx(scheme.ratio(i));
    std::vector<LocalDimRow> rows;
    for (long m : levels) {
        double mass_exp = static_cast<double>(m - isqrt(m)); // halvings up to level m
        rows.push_back(LocalDimRow{m, mass_exp / log_len[static_cast<std::size_t>(m)]});
    }
    return rows;
}

} // namespace frost
