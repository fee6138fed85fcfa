#include "frost/sets.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <set>
#include <tuple>

namespace frost {

// ---------------------------------------------------------------------------
// Cantor schemes
// ---------------------------------------------------------------------------

CantorScheme CantorScheme::from_ratios(std::vector<Rat> ds) {
    if (ds.empty())
        throw InvariantError("cantor scheme needs at least one ratio");
    return CantorScheme([ds = std::move(ds)](long level) {
        std::size_t i = static_cast<std::size_t>(level);
        return i < ds.size() ? ds[i] : ds.back();
    });
}

Interval cantor_cell(const CantorScheme& scheme, const Word& w) {
    Interval cell{Rat(0), Rat(1)};
    for (long i = 0; i < w.depth(); ++i) {
        Rat d = scheme.ratio(i);
        Rat len = cell.length();
        if (w.bit(i) == 0)
            cell.hi = cell.lo + len / d;
        else
            cell.lo = cell.hi - len / d;
    }
    return cell;
}

std::vector<Interval> cantor_cells(const CantorScheme& scheme, long n) {
    std::vector<Interval> level{Interval{Rat(0), Rat(1)}};
    for (long i = 0; i < n; ++i) {
        Rat d = scheme.ratio(i);
        std::vector<Interval> next;
        next.reserve(level.size() * 2);
        for (const Interval& cell : level) {
            Rat len = cell.length();
            next.push_back(Interval{cell.lo, cell.lo + len / d});
            next.push_back(Interval{cell.hi - len / d, cell.hi});
        }
        level = std::move(next);
    }
    return level;
}

namespace {

bool stage_cells_meet_open_rec(const CantorScheme& scheme, const Interval& iv,
                               const Interval& cell, long level, long stage) {
    if (!open_meets_closed(iv, cell))
        return false;
    if (level == stage)
        return true;
    Rat d = scheme.ratio(level);
    Rat len = cell.length();
    return stage_cells_meet_open_rec(scheme, iv, Interval{cell.lo, cell.lo + len / d},
                                     level + 1, stage) ||
           stage_cells_meet_open_rec(scheme, iv, Interval{cell.hi - len / d, cell.hi},
                                     level + 1, stage);
}

bool scheme_meets_open_rec(const CantorScheme& scheme, const Interval& iv,
                           const Interval& cell, long level, long max_level) {
    if (!open_meets_closed(iv, cell))
        return false;
    // cell endpoints persist through all deeper levels, so they belong to C
    if (open_contains(iv, cell.lo) || open_contains(iv, cell.hi))
        return true;
    // here the cell covers [iv.lo, iv.hi] entirely; recursion halves it
    if (level >= max_level)
        throw InvariantError("scheme_meets_open: undecided at level cap");
    Rat d = scheme.ratio(level);
    Rat len = cell.length();
    return scheme_meets_open_rec(scheme, iv, Interval{cell.lo, cell.lo + len / d},
                                 level + 1, max_level) ||
           scheme_meets_open_rec(scheme, iv, Interval{cell.hi - len / d, cell.hi},
                                 level + 1, max_level);
}

} // namespace

bool stage_cells_meet_open(const CantorScheme& scheme, const Interval& iv, long stage) {
    if (iv.lo >= iv.hi)
        return false;
    return stage_cells_meet_open_rec(scheme, iv, Interval{Rat(0), Rat(1)}, 0, stage);
}

bool scheme_meets_open(const CantorScheme& scheme, const Interval& iv, long max_level) {
    if (iv.lo >= iv.hi)
        return false;
    return scheme_meets_open_rec(scheme, iv, Interval{Rat(0), Rat(1)}, 0, max_level);
}

ClosedSetName closed_name(const CantorScheme& scheme) {
    return ClosedSetName{[scheme](const Word& w, long t) {
        if (t <= 0)
            return false;
        return !stage_cells_meet_open(scheme, w.interval(), t);
    }};
}

OvertSetName overt_name(const CantorScheme& scheme) {
    return OvertSetName{[scheme](long t) {
        std::vector<Word> out;
        if (t < 0)
            return out;
        std::set<Word, ShortlexLess> seen;
        // distinct left endpoints with |w| <= t are exactly those at level t
        for (const Interval& cell : cantor_cells(scheme, t)) {
            const Rat& a = cell.lo;
            if (a.is_zero())
                continue;
            Word chain = binary_chain_prefix(a, t);
            for (long r = 0; r <= t; ++r) {
                if ((a * Rat::pow2(r)).is_integer())
                    continue; // a sits on the depth-r grid
                seen.insert(chain.prefix(r));
            }
        }
        out.assign(seen.begin(), seen.end());
        return out;
    }};
}

ClosedOvertName closed_overt_name(const CantorScheme& scheme) {
    return ClosedOvertName{closed_name(scheme), overt_name(scheme)};
}

// ---------------------------------------------------------------------------
// Canonical special names
// ---------------------------------------------------------------------------

ClosedOvertName full_name() {
    ClosedSetName closed{[](const Word&, long) { return false; }};
    OvertSetName overt{[](long t) {
        std::vector<Word> out;
        for (long r = 0; r <= t; ++r)
            for (Word& w : words_at_depth(r))
                out.push_back(std::move(w));
        return out;
    }};
    return ClosedOvertName{std::move(closed), std::move(overt)};
}

ClosedSetName empty_closed_name() {
    return ClosedSetName{[](const Word& w, long t) { return t >= 1 && t >= w.depth(); }};
}

ClosedOvertName point_chain_name(const Rat& x) {
    if (x.sign() < 0 || x > Rat(1))
        throw InvariantError("point name outside [0,1]");
    ClosedSetName closed{[x](const Word& v, long t) {
        Word chain = binary_chain_prefix(x, v.depth());
        if (chain == v)
            return false;
        long d = 0;
        while (v.bit(d) == chain.bit(d))
            ++d;
        return t >= d + 1;
    }};
    OvertSetName overt{[x](long t) {
        std::vector<Word> out;
        if (t < 0)
            return out;
        Word chain = binary_chain_prefix(x, t);
        for (long r = 0; r <= t; ++r)
            out.push_back(chain.prefix(r));
        return out;
    }};
    return ClosedOvertName{std::move(closed), std::move(overt)};
}

ClosedSetName point_closed_name_strict(const Rat& x) {
    if (x.sign() < 0 || x > Rat(1))
        throw InvariantError("point name outside [0,1]");
    return ClosedSetName{[x](const Word& v, long t) {
        if (open_contains(v.interval(), x))
            return false;
        return t >= 1 && t >= v.depth();
    }};
}

// ---------------------------------------------------------------------------
// Explicit names
// ---------------------------------------------------------------------------

ClosedOvertName ExplicitName::name() const {
    auto excl = std::make_shared<StagedWords>(excluded);
    auto cert = std::make_shared<StagedWords>(certified);
    ClosedSetName closed{[excl](const Word& v, long t) {
        for (const auto& [stage, ws] : *excl) {
            if (stage > t)
                continue;
            for (const Word& u : ws)
                if (u.is_prefix_of(v))
                    return true;
        }
        return false;
    }};
    OvertSetName overt{[cert](long t) {
        std::set<Word, ShortlexLess> seen;
        for (const auto& [stage, ws] : *cert)
            if (stage <= t)
                seen.insert(ws.begin(), ws.end());
        return std::vector<Word>(seen.begin(), seen.end());
    }};
    return ClosedOvertName{std::move(closed), std::move(overt)};
}

// ---------------------------------------------------------------------------
// Coverage and rescaling
// ---------------------------------------------------------------------------

namespace {

bool covered_rec(const ClosedSetName& a, const Word& u, const Rat& lo, const Rat& hi, long t) {
    if (a.excluded(u, t))
        return true;
    if (u.depth() >= t)
        return false;
    Rat m = u.interval().midpoint();
    if (lo == hi) {
        if (lo < m)
            return covered_rec(a, u.child(0), lo, hi, t);
        if (lo > m)
            return covered_rec(a, u.child(1), lo, hi, t);
        return covered_rec(a, u.child(0), lo, hi, t) || covered_rec(a, u.child(1), lo, hi, t);
    }
    if (hi <= m)
        return covered_rec(a, u.child(0), lo, hi, t);
    if (lo >= m)
        return covered_rec(a, u.child(1), lo, hi, t);
    return covered_rec(a, u.child(0), lo, m, t) && covered_rec(a, u.child(1), m, hi, t);
}

} // namespace

bool covered_by_excluded(const ClosedSetName& a, const Interval& iv, long t) {
    Rat lo = max(iv.lo, Rat(0));
    Rat hi = min(iv.hi, Rat(1));
    if (lo > hi)
        return true; // nothing to cover
    return covered_rec(a, Word(), lo, hi, t);
}

ClosedOvertName rescale(const ClosedOvertName& a, const Interval& target) {
    return rescale(a, Interval{Rat(0), Rat(1)}, target);
}

ClosedOvertName rescale(const ClosedOvertName& a, const Interval& source, const Interval& target) {
    if (!(source.lo < source.hi) || !(target.lo < target.hi))
        throw InvariantError("rescale: degenerate interval");
    Rat ratio = target.length() / source.length();
    auto fwd = [=](const Rat& x) { return target.lo + (x - source.lo) * ratio; };
    auto inv = [=](const Rat& y) { return source.lo + (y - target.lo) / ratio; };

    ClosedSetName closed{[a, target, inv](const Word& v, long t) {
        Interval dv = v.interval();
        if (target.lo >= dv.hi || target.hi <= dv.lo)
            return true; // D_v° misses the target interval entirely
        Rat jlo = max(dv.lo, target.lo);
        Rat jhi = min(dv.hi, target.hi);
        return covered_by_excluded(a.closed, Interval{inv(jlo), inv(jhi)}, t);
    }};
    OvertSetName overt{[a, fwd](long t) {
        std::set<Word, ShortlexLess> seen;
        for (const Word& w : a.overt.words(t)) {
            Interval dw = w.interval();
            Interval k{fwd(dw.lo), fwd(dw.hi)};
            Word chain = binary_chain_prefix(k.lo, t);
            for (long r = 0; r <= t; ++r) {
                Word v = chain.prefix(r);
                if (open_contains_closed(v.interval(), k))
                    seen.insert(v);
            }
        }
        return std::vector<Word>(seen.begin(), seen.end());
    }};
    return ClosedOvertName{std::move(closed), std::move(overt)};
}

// ---------------------------------------------------------------------------
// Countable-union assembly
// ---------------------------------------------------------------------------

namespace {

struct AssembleState {
    std::function<ClosedOvertName(long)> names;
    std::optional<long> count;
    std::mutex mu;
    std::map<long, ClosedOvertName> cache;

    // block i is [2^{-2i-2}, 2^{-2i-1}]
    static Interval block(long i) {
        return Interval{Rat::pow2(-2 * i - 2), Rat::pow2(-2 * i - 1)};
    }

    const ClosedOvertName& fetch(long i) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(i);
        if (it == cache.end())
            it = cache.emplace(i, rescale(names(i), block(i))).first;
        return it->second;
    }

    bool has(long i) const { return !count || i < *count; }
};

} // namespace

ClosedOvertName assemble(std::function<ClosedOvertName(long)> names, std::optional<long> count) {
    auto st = std::make_shared<AssembleState>();
    st->names = std::move(names);
    st->count = count;

    ClosedSetName closed{[st](const Word& v, long t) {
        Interval dv = v.interval();
        if (dv.lo.is_zero())
            return false; // the anchor chain towards 0 stays undecided
        for (long i = 0;; ++i) {
            Interval b = AssembleState::block(i);
            if (b.hi <= dv.lo)
                break; // all further blocks lie left of D_v°
            if (!open_meets_closed(dv, b))
                continue;
            if (!st->has(i))
                continue; // absent block carries no content
            if (i > t)
                return false; // name i not consulted before stage i
            if (!st->fetch(i).closed.excluded(v, t))
                return false;
        }
        return true;
    }};
    OvertSetName overt{[st](long t) {
        std::set<Word, ShortlexLess> seen;
        for (long i = 0; i <= t && st->has(i); ++i) {
            auto ws = st->fetch(i).overt.words(t);
            seen.insert(ws.begin(), ws.end());
        }
        return std::vector<Word>(seen.begin(), seen.end());
    }};
    return ClosedOvertName{std::move(closed), std::move(overt)};
}

ClosedOvertName assemble(std::vector<ClosedOvertName> names) {
    long n = static_cast<long>(names.size());
    auto shared = std::make_shared<std::vector<ClosedOvertName>>(std::move(names));
    return assemble([shared](long i) { return (*shared)[static_cast<std::size_t>(i)]; }, n);
}

// ---------------------------------------------------------------------------
// PerfectCore
// ---------------------------------------------------------------------------

namespace {

struct Decision {
    long stage;
    bool cert;
};

struct PcState {
    std::map<Word, Decision, ShortlexLess> decided;
    std::set<Word, ShortlexLess> monitored;
    std::vector<AddedPoint> added;
    std::vector<std::tuple<Word, long, bool>> log;

    void decide(const Word& w, long stage, bool cert) {
        auto [it, fresh] = decided.emplace(w, Decision{stage, cert});
        if (!fresh)
            throw InvariantError("perfect_core: word decided twice: \"" + w.bits() + "\"");
        log.emplace_back(w, stage, cert);
    }
};

// Largest dyadic sub-interval of D_m (leftmost on ties) whose closure is
// disjoint from every interval in `avoid`.
Word find_fresh_subinterval(const Word& m, const std::vector<Interval>& avoid) {
    std::deque<Word> queue{m.child(0), m.child(1)};
    const long depth_cap = m.depth() + 64;
    while (!queue.empty()) {
        Word u = queue.front();
        queue.pop_front();
        Interval du = u.interval();
        bool touched = false, swallowed = false;
        for (const Interval& e : avoid) {
            if (closed_meets_closed(du, e)) {
                touched = true;
                if (closed_contains_closed(e, du)) {
                    swallowed = true;
                    break;
                }
            }
        }
        if (!touched)
            return u;
        if (!swallowed && u.depth() < depth_cap) {
            queue.push_back(u.child(0));
            queue.push_back(u.child(1));
        }
    }
    throw InvariantError("perfect_core: no fresh sub-interval of \"" + m.bits() + "\"");
}

void process_refutation(PcState& st, const Word m, long stage) {
    std::vector<Interval> avoid;
    for (const auto& [w, d] : st.decided)
        if (!d.cert)
            avoid.push_back(w.interval());
    for (const Word& k : st.monitored)
        if (k != m && m.is_prefix_of(k))
            avoid.push_back(k.interval());

    Word cell = find_fresh_subinterval(m, avoid);
    Word l0 = cell.child(0), l1 = cell.child(1);
    st.decide(l0, stage, false);
    st.decide(l1, stage, false);
    st.added.push_back(AddedPoint{cell.interval().midpoint(), cell, l0, l1, stage});
    st.monitored.erase(m);
}

} // namespace

PerfectCoreResult perfect_core(const ClosedSetName& a, long stage_budget) {
    if (stage_budget < 1)
        throw InvariantError("perfect_core: stage budget must be >= 1");
    PcState st;
    Word cursor; // next BFS candidate

    auto advance = [](const Word& w) {
        std::string bits = w.bits();
        long i = static_cast<long>(bits.size()) - 1;
        while (i >= 0 && bits[static_cast<std::size_t>(i)] == '1')
            bits[static_cast<std::size_t>(i--)] = '0';
        if (i < 0)
            return Word(std::string(bits.size() + 1, '0'));
        bits[static_cast<std::size_t>(i)] = '1';
        return Word(bits);
    };

    for (long t = 1; t <= stage_budget; ++t) {
        // rule 4: handle refuted monitored intervals, innermost first
        for (;;) {
            const Word* pick = nullptr;
            for (const Word& m : st.monitored) {
                if (!a.excluded(m, t))
                    continue;
                if (!pick || m.depth() > pick->depth() ||
                    (m.depth() == pick->depth() && m.bits() < pick->bits()))
                    pick = &m;
            }
            if (!pick)
                break;
            process_refutation(st, *pick, t);
        }

        // one breadth-first decision per stage
        while (st.decided.count(cursor))
            cursor = advance(cursor);
        Interval dc = cursor.interval();
        bool holds_point = false;
        for (const AddedPoint& p : st.added)
            if (open_contains(dc, p.x)) {
                holds_point = true;
                break;
            }
        if (holds_point) {
            st.decide(cursor, t, true); // rule 1
        } else if (a.excluded(cursor, t)) {
            st.decide(cursor, t, false); // rule 2
        } else {
            st.decide(cursor, t, true); // rule 3
            st.monitored.insert(cursor);
        }
    }

    auto decided = std::make_shared<std::map<Word, Decision, ShortlexLess>>(std::move(st.decided));
    ClosedSetName closed{[decided](const Word& v, long t) {
        for (long d = 0; d <= v.depth(); ++d) {
            auto it = decided->find(v.prefix(d));
            if (it != decided->end() && !it->second.cert && it->second.stage <= t)
                return true;
        }
        return false;
    }};
    auto cert_list = std::make_shared<std::vector<std::pair<long, Word>>>();
    for (const auto& [w, d] : *decided)
        if (d.cert)
            cert_list->emplace_back(d.stage, w);
    OvertSetName overt{[cert_list](long t) {
        std::set<Word, ShortlexLess> seen;
        for (const auto& [stage, w] : *cert_list)
            if (stage <= t)
                seen.insert(w);
        return std::vector<Word>(seen.begin(), seen.end());
    }};

    PerfectCoreResult res;
    res.name = ClosedOvertName{std::move(closed), std::move(overt)};
    res.added = std::move(st.added);
    res.decisions = std::move(st.log);
    res.stage_budget = stage_budget;
    return res;
}

// ---------------------------------------------------------------------------
// Audits
// ---------------------------------------------------------------------------

std::optional<Word> consistency_violation(const ClosedOvertName& n, long max_depth,
                                          long max_stage) {
    for (long t = 1; t <= max_stage; ++t)
        for (const Word& w : n.overt.words(t)) {
            if (w.depth() > max_depth)
                continue;
            if (n.closed.excluded(w, t))
                return w;
        }
    return std::nullopt;
}

} // namespace frost
