#include "frost/flows.hpp"

#include <functional>

namespace frost {

void CapacityTree::set(const Word& w, Rat v) {
    if (w.depth() > depth)
        throw InvariantError("capacity on a word below the truncation depth: \"" + w.bits() + "\"");
    if (v.sign() < 0)
        throw InvariantError("negative capacity at \"" + w.bits() + "\"");
    if (v.is_zero())
        cap.erase(w);
    else
        cap[w] = std::move(v);
}

void CapacityTree::validate() const {
    for (const auto& [w, v] : cap) {
        if (w.depth() > depth)
            throw InvariantError("capacity beyond depth at \"" + w.bits() + "\"");
        if (v.sign() < 0)
            throw InvariantError("negative capacity at \"" + w.bits() + "\"");
    }
}

void TreeFlow::set(const Word& w, Rat v) {
    if (w.depth() > depth)
        throw InvariantError("flow on a word below the truncation depth: \"" + w.bits() + "\"");
    if (v.sign() < 0)
        throw InvariantError("negative flow at \"" + w.bits() + "\"");
    if (v.is_zero())
        flow.erase(w);
    else
        flow[w] = std::move(v);
}

std::optional<Word> TreeFlow::conservation_violation() const {
    for (const auto& [w, v] : flow) {
        if (v.sign() < 0)
            return w;
        if (w.depth() < depth && v != at(w.child(0)) + at(w.child(1)))
            return w;
    }
    // a positive child under an absent (zero) parent also breaks conservation
    for (const auto& [w, v] : flow) {
        if (!w.empty() && v.sign() > 0 && flow.find(w.parent()) == flow.end())
            return w.parent();
    }
    return std::nullopt;
}

void TreeFlow::validate() const {
    if (auto w = conservation_violation())
        throw InvariantError("flow conservation fails at \"" + w->bits() + "\"");
}

// ---------------------------------------------------------------------------
// Max flow / min cut
// ---------------------------------------------------------------------------

namespace {

Rat subtree_value(const CapacityTree& cap, const Word& w, WordMap& memo) {
    Rat c = cap.at(w);
    if (c.is_zero())
        return Rat(0);
    if (w.depth() == cap.depth)
        return c;
    auto it = memo.find(w);
    if (it != memo.end())
        return it->second;
    Rat sum = subtree_value(cap, w.child(0), memo) + subtree_value(cap, w.child(1), memo);
    Rat v = min(c, sum);
    memo.emplace(w, v);
    return v;
}

void extract_witness(const CapacityTree& cap, const Word& w, const Rat& amount,
                     WordMap& memo, SplitStrategy strategy, TreeFlow& out) {
    if (amount.is_zero())
        return;
    out.flow[w] = amount;
    if (w.depth() == cap.depth)
        return;
    Word c0 = w.child(0), c1 = w.child(1);
    Rat f0 = subtree_value(cap, c0, memo);
    Rat f1 = subtree_value(cap, c1, memo);
    Rat a0;
    if (strategy == SplitStrategy::LeftGreedy) {
        a0 = min(f0, amount);
    } else {
        Rat sum = f0 + f1;
        a0 = sum.is_zero() ? Rat(0) : amount * f0 / sum;
    }
    extract_witness(cap, c0, a0, memo, strategy, out);
    extract_witness(cap, c1, amount - a0, memo, strategy, out);
}

} // namespace

MaxFlowResult truncated_max_flow(const CapacityTree& cap, SplitStrategy strategy) {
    cap.validate();
    WordMap memo;
    Rat value = subtree_value(cap, Word(), memo);
    TreeFlow witness;
    witness.depth = cap.depth;
    extract_witness(cap, Word(), value, memo, strategy, witness);
    return MaxFlowResult{std::move(value), std::move(witness)};
}

namespace {

void collect_cut(const CapacityTree& cap, const Word& w, const WordMap& memo,
                 std::vector<Word>& out) {
    Rat c = cap.at(w);
    if (c.is_zero() || w.depth() == cap.depth) {
        out.push_back(w);
        return;
    }
    auto it = memo.find(w);
    Rat v = it == memo.end() ? c : it->second;
    if (v == c) { // cutting here is no worse than anywhere below
        out.push_back(w);
        return;
    }
    collect_cut(cap, w.child(0), memo, out);
    collect_cut(cap, w.child(1), memo, out);
}

} // namespace

MinCutResult min_cut(const CapacityTree& cap) {
    cap.validate();
    WordMap memo;
    Rat value = subtree_value(cap, Word(), memo);
    MinCutResult res;
    res.value = value;
    collect_cut(cap, Word(), memo, res.antichain);
    return res;
}

WordMap max_flow_iterate(const CapacityTree& cap, long iterations) {
    cap.validate();
    if (iterations < 0)
        throw InvariantError("max_flow_iterate: negative iteration count");
    WordMap a = cap.cap;
    auto value = [](const WordMap& m, const Word& w) {
        auto it = m.find(w);
        return it == m.end() ? Rat(0) : it->second;
    };
    for (long i = 0; i < iterations; ++i) {
        WordMap next;
        for (const auto& [w, v] : a) {
            Rat nv = w.depth() == cap.depth
                         ? v
                         : min(v, value(a, w.child(0)) + value(a, w.child(1)));
            if (!nv.is_zero())
                next.emplace(w, std::move(nv));
        }
        a = std::move(next);
    }
    return a;
}

// ---------------------------------------------------------------------------
// Flow concentration
// ---------------------------------------------------------------------------

namespace {

// Splits g(v) among the children of v, keeping the invariant
//   g(u) > 0  =>  2^{-2|u|-1} <= g(u)  and  g(u) + 2^{-2|u|-1} <= h(u)
// where h is the input flow normalized to h(e) = 1.
void concentrate_rec(const TreeFlow& h, const Word& v, const Rat& gv, TreeFlow& g) {
    g.flow[v] = gv;
    if (v.depth() == h.depth)
        return;
    Word v0 = v.child(0), v1 = v.child(1);
    Rat h0 = h.at(v0), h1 = h.at(v1);
    Rat tc = Rat::pow2(-2 * v.depth() - 3); // child threshold 2^{-2|v0|-1}
    Rat two_tc = tc * Rat(2);
    if (h0 >= two_tc && h1 >= two_tc) {
        // both children can stay in the support
        Rat g0 = min(h0 - tc, gv - tc);
        concentrate_rec(h, v0, g0, g);
        concentrate_rec(h, v1, gv - g0, g);
    } else if (h0 >= tc * Rat(3)) {
        concentrate_rec(h, v0, gv, g);
    } else {
        concentrate_rec(h, v1, gv, g);
    }
}

} // namespace

TreeFlow concentrate_flow(const TreeFlow& f) {
    f.validate();
    Rat total = f.at(Word());
    if (total.sign() <= 0)
        throw InvariantError("concentrate_flow: zero flow");
    TreeFlow h;
    h.depth = f.depth;
    for (const auto& [w, v] : f.flow)
        h.flow[w] = v / total;
    TreeFlow g;
    g.depth = f.depth;
    concentrate_rec(h, Word(), Rat(1, 2), g);
    return g;
}

NonZeroFlowResult nonzero_flow_search(const CapacityTree& cap, long k, SplitStrategy strategy) {
    if (k < 0)
        throw InvariantError("nonzero_flow_search: negative precision");
    MaxFlowResult mf = truncated_max_flow(cap, strategy);
    Rat goal = Rat::pow2(-k);
    NonZeroFlowResult res;
    if (mf.value >= goal) {
        res.found = true;
        Rat scale = goal / mf.value;
        res.witness.depth = mf.witness.depth;
        for (const auto& [w, v] : mf.witness.flow)
            res.witness.flow[w] = v * scale;
        res.bound = mf.value;
    } else {
        res.found = false;
        res.bound = mf.value;
    }
    return res;
}

} // namespace frost
