#include "frost/frostman.hpp"

#include <functional>

namespace frost {

CapacityTree capacity_tree(const ClosedSetName& a, const Rat& s, long depth, long stage) {
    if (s.sign() < 0 || s > Rat(1))
        throw InvariantError("capacity_tree: exponent outside [0,1]");
    if (depth < 0 || stage < 0)
        throw InvariantError("capacity_tree: negative depth or stage");
    CapacityTree tree;
    tree.depth = depth;
    // prefix-closed exclusion lets us prune whole subtrees
    std::function<void(const Word&)> walk = [&](const Word& w) {
        if (a.excluded(w, stage))
            return;
        tree.cap[w] = Rat::pow2(-ceil_mul(s, w.depth()));
        if (w.depth() < depth) {
            walk(w.child(0));
            walk(w.child(1));
        }
    };
    walk(Word());
    return tree;
}

FrostResult frost(const FrostmanTask& task) {
    CapacityTree tree = capacity_tree(task.set, task.s, task.depth, task.stage);
    NonZeroFlowResult nz = nonzero_flow_search(tree, task.k);
    FrostResult res;
    res.bound = nz.bound;
    if (!nz.found)
        return res;
    res.found = true;
    res.measure = flow_to_measure(nz.witness);
    return res;
}

DyadicMeasure strict_frost(const CantorScheme& scheme, const Rat& s, long depth) {
    if (s.sign() < 0 || s > Rat(1))
        throw InvariantError("strict_frost: exponent outside [0,1]");
    for (long i = 0; i < depth; ++i)
        if (!is_pow2_int(scheme.ratio(i)))
            throw InvariantError("strict_frost: scheme not dyadic-aligned at level " +
                                 std::to_string(i));

    // capacities by the exact interior test against the scheme's set
    CapacityTree tree;
    tree.depth = depth;
    std::function<void(const Word&)> walk = [&](const Word& w) {
        if (!scheme_meets_open(scheme, w.interval(), 4 * depth + 64))
            return;
        tree.cap[w] = Rat::pow2(-ceil_mul(s, w.depth()));
        if (w.depth() < depth) {
            walk(w.child(0));
            walk(w.child(1));
        }
    };
    walk(Word());

    MaxFlowResult mf = truncated_max_flow(tree, SplitStrategy::Proportional);
    if (mf.value.sign() <= 0)
        throw InvariantError("strict_frost: no Frostman measure at this depth");
    return flow_to_measure(mf.witness);
}

} // namespace frost
