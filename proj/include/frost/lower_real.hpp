#pragma once

#include <functional>
#include <optional>

#include "frost/rat.hpp"

namespace frost {

// A lower real: a real number known only through a monotone nondecreasing
// sequence of rational lower bounds, consumed stage by stage.
struct LowerRealApprox {
    std::function<Rat(long)> stages;

    Rat value(long t) const {
        if (t < 0)
            throw InvariantError("lower real queried at a negative stage");
        return stages(t);
    }

    static LowerRealApprox constant(Rat q) {
        return LowerRealApprox{[q](long) { return q; }};
    }
};

// Returns the first stage t < nstages with stages(t) > stages(t+1), if any.
inline std::optional<long> monotonicity_violation(const LowerRealApprox& x, long nstages) {
    Rat prev = x.value(0);
    for (long t = 1; t <= nstages; ++t) {
        Rat cur = x.value(t);
        if (prev > cur)
            return t - 1;
        prev = cur;
    }
    return std::nullopt;
}

inline Rat lower_real_value(const LowerRealApprox& x, long t) { return x.value(t); }

} // namespace frost
