#include "frost/dyadic.hpp"

namespace frost {

Word binary_chain_prefix(const Rat& x, long n) {
    if (x.sign() < 0 || x > Rat(1))
        throw InvariantError("binary_chain_prefix: point outside [0,1]");
    std::string bits;
    bits.reserve(static_cast<std::size_t>(n));
    Rat y = x;
    const Rat half(1, 2);
    for (long i = 0; i < n; ++i) {
        if (y == half) {
            // non-terminating expansion: 0 followed by all ones
            bits += '0';
            y = Rat(1);
            continue;
        }
        if (y > half) {
            bits += '1';
            y = y * Rat(2) - Rat(1);
        } else {
            bits += '0';
            y = y * Rat(2);
        }
    }
    return Word(bits);
}

std::vector<Word> words_at_depth(long n) {
    std::vector<Word> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    out.reserve(static_cast<std::size_t>(1) << n);
    std::string bits(static_cast<std::size_t>(n), '0');
    while (true) {
        out.emplace_back(bits);
        long i = n - 1;
        while (i >= 0 && bits[static_cast<std::size_t>(i)] == '1')
            bits[static_cast<std::size_t>(i--)] = '0';
        if (i < 0)
            break;
        bits[static_cast<std::size_t>(i)] = '1';
    }
    return out;
}

} // namespace frost
