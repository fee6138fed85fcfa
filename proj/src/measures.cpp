#include "frost/measures.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <set>

namespace frost {

void DyadicMeasure::set(const Word& w, Rat v) {
    if (w.depth() > depth)
        throw InvariantError("mass on a word below the truncation depth: \"" + w.bits() + "\"");
    if (v.sign() < 0)
        throw InvariantError("negative mass at \"" + w.bits() + "\"");
    if (v.is_zero())
        mass.erase(w);
    else
        mass[w] = std::move(v);
}

std::optional<Word> DyadicMeasure::additivity_violation() const {
    for (const auto& [w, v] : mass) {
        if (v.sign() < 0)
            return w;
        if (w.depth() < depth && v != at(w.child(0)) + at(w.child(1)))
            return w;
        if (!w.empty() && v.sign() > 0 && mass.find(w.parent()) == mass.end())
            return w.parent();
    }
    return std::nullopt;
}

DyadicMeasure flow_to_measure(const TreeFlow& f) {
    f.validate();
    DyadicMeasure mu;
    mu.depth = f.depth;
    mu.mass = f.flow;
    return mu;
}

TreeFlow measure_to_flow(const DyadicMeasure& mu) {
    if (auto w = mu.additivity_violation())
        throw InvariantError("measure is not additive at \"" + w->bits() + "\"");
    TreeFlow f;
    f.depth = mu.depth;
    f.flow = mu.mass;
    return f;
}

MeasureName measure_name(const DyadicMeasure& mu) {
    auto shared = std::make_shared<DyadicMeasure>(mu);
    return MeasureName{
        [shared](const Word& w, long) {
            return w.depth() <= shared->depth ? shared->at(w) : Rat(0);
        },
        mu.total(), false};
}

OvertSetName support_overt(const MeasureName& mu) {
    auto lower = mu.lower;
    return OvertSetName{[lower](long t) {
        std::vector<Word> out;
        for (long r = 0; r <= t; ++r)
            for (const Word& w : words_at_depth(r))
                if (lower(w, t).sign() > 0)
                    out.push_back(w);
        return out;
    }};
}

OvertSetName support_overt(const DyadicMeasure& mu) {
    auto shared = std::make_shared<DyadicMeasure>(mu);
    return OvertSetName{[shared](long t) {
        std::vector<Word> out;
        for (const auto& [w, v] : shared->mass)
            if (w.depth() <= t && v.sign() > 0)
                out.push_back(w);
        return out;
    }};
}

DyadicMeasure measure_from_overt(const OvertSetName& a, long k) {
    if (k < 1)
        throw InvariantError("measure_from_overt: stage must be >= 1");
    std::vector<Word> certified = a.words(k);
    std::set<Word, ShortlexLess> cert_set(certified.begin(), certified.end());
    if (cert_set.empty())
        throw InvariantError("measure_from_overt: no witness yet");

    // resting weights of enumerated words, by level
    WordMap acc;
    for (long r = 1; r <= k; ++r) {
        // pass last round's weights to the first certified child, if any
        std::vector<std::pair<Word, Rat>> moves;
        for (const auto& [u, weight] : acc) {
            if (u.depth() != r - 1 || weight.sign() <= 0)
                continue;
            Word c0 = u.child(0), c1 = u.child(1);
            if (cert_set.count(c0))
                moves.emplace_back(c0, weight);
            else if (cert_set.count(c1))
                moves.emplace_back(c1, weight);
            else
                continue; // no certified child: the weight rests here
            acc[u] = Rat(0);
        }
        for (auto& [w, v] : moves)
            acc[w] += v;

        // fresh round-r weights: the round-robin enumeration of the m
        // certified level-r words gives word p (1-based) total
        // sum_j 2^{-(p + j m) - r} = 2^{-p-r} 2^m / (2^m - 1)
        std::vector<Word> level;
        for (const Word& w : cert_set)
            if (w.depth() == r)
                level.push_back(w);
        long m = static_cast<long>(level.size());
        if (m == 0)
            continue;
        Rat pow_m = Rat::pow2(m);
        Rat factor = pow_m / (pow_m - Rat(1));
        for (long p = 1; p <= m; ++p)
            acc[level[static_cast<std::size_t>(p - 1)]] += Rat::pow2(-p - r) * factor;
    }

    DyadicMeasure mu;
    mu.depth = k;
    for (const auto& [u, weight] : acc) {
        if (weight.sign() <= 0)
            continue;
        for (long d = 0; d <= u.depth(); ++d) {
            Word p = u.prefix(d);
            auto it = mu.mass.find(p);
            if (it == mu.mass.end())
                mu.mass.emplace(p, weight);
            else
                it->second += weight;
        }
    }
    return mu;
}

Word point_from_measure(const MeasureName& mu, long precision, long stage_budget) {
    Word w;
    std::vector<long> decision_stages;
    for (long d = 0; d < precision; ++d) {
        bool extended = false;
        for (long t = 0; t <= stage_budget && !extended; ++t) {
            for (int b = 0; b < 2 && !extended; ++b) {
                Word c = w.child(b);
                if (mu.lower(c, t).sign() > 0) {
                    w = c;
                    decision_stages.push_back(t);
                    extended = true;
                }
            }
        }
        if (!extended)
            throw StageExhausted("point_from_measure: no positive bound below \"" + w.bits() +
                                 "\" within the stage budget");
    }
    // soundness: every prefix has a positive bound at its decision stage
    for (long d = 1; d <= w.depth(); ++d)
        if (mu.lower(w.prefix(d), decision_stages[static_cast<std::size_t>(d - 1)]).sign() <= 0)
            throw InvariantError("point_from_measure: unsound chain at depth " + std::to_string(d));
    return w;
}

MeasureName point_measure(const Rat& x) {
    if (x.sign() < 0 || x > Rat(1))
        throw InvariantError("point measure outside [0,1]");
    bool atom = x.is_dyadic();
    return MeasureName{
        [x](const Word& v, long) {
            return binary_chain_prefix(x, v.depth()) == v ? Rat(1) : Rat(0);
        },
        Rat(1), atom};
}

ConcentrateResult concentrate(const DyadicMeasure& mu) {
    if (auto w = mu.additivity_violation())
        throw InvariantError("concentrate: measure not additive at \"" + w->bits() + "\"");
    Rat total = mu.total();
    if (total.sign() <= 0)
        throw InvariantError("concentrate: zero measure");
    long k = least_pow2_le(total);

    // flow of value 2^{-k} below mu, split left-greedily
    TreeFlow f;
    f.depth = mu.depth;
    std::function<void(const Word&, const Rat&)> build = [&](const Word& v, const Rat& amount) {
        if (amount.is_zero())
            return;
        f.flow[v] = amount;
        if (v.depth() == mu.depth)
            return;
        Rat a0 = min(mu.at(v.child(0)), amount);
        build(v.child(0), a0);
        build(v.child(1), amount - a0);
    };
    build(Word(), Rat::pow2(-k));

    TreeFlow g = concentrate_flow(f);
    ConcentrateResult res;
    res.k = k;
    res.scale = Rat::pow2(-k);
    res.nu.depth = mu.depth;
    for (const auto& [w, v] : g.flow)
        res.nu.mass[w] = v * res.scale;
    return res;
}

ClosedOvertName concentrated_support(const DyadicMeasure& nu, const Rat& c) {
    if (c.sign() <= 0)
        throw InvariantError("concentrated_support: scale must be positive");
    for (const auto& [w, v] : nu.mass) {
        if (v.sign() <= 0)
            continue;
        Rat threshold = c * Rat::pow2(-2 * w.depth() - 2);
        if (v < threshold)
            throw InvariantError("concentration fails at \"" + w.bits() + "\"");
    }
    auto shared = std::make_shared<DyadicMeasure>(nu);
    Rat scale = c;
    ClosedSetName closed{[shared, scale](const Word& v, long) {
        for (long d = 0; d <= std::min(v.depth(), shared->depth); ++d) {
            Word p = v.prefix(d);
            if (shared->at(p) < scale * Rat::pow2(-2 * p.depth() - 2))
                return true;
        }
        return false;
    }};
    OvertSetName overt = support_overt(nu);
    return ClosedOvertName{std::move(closed), std::move(overt)};
}

std::vector<Word> frostman_check(const DyadicMeasure& mu, const Rat& s, long n) {
    if (s.sign() < 0 || s > Rat(1))
        throw InvariantError("frostman_check: exponent outside [0,1]");
    std::vector<Word> out;
    for (const auto& [w, v] : mu.mass) {
        if (w.depth() > n)
            continue;
        if (v > Rat::pow2(-ceil_mul(s, w.depth())))
            out.push_back(w);
    }
    return out;
}

} // namespace frost
