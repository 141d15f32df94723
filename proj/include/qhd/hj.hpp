#pragma once

// Hirzebruch-Jung ("minus") continued fractions n/m = a1 - 1/(a2 - 1/(...))
// with all ai >= 2, Riemenschneider duality n/m <-> n/(n-m), and the chains
// p^2/(pq-1) whose negated coefficients frame the G-class plumbing chains.

#include <cstdint>
#include <numeric>
#include <vector>

#include "qhd/errors.hpp"

namespace qhd {

using HJExpansion = std::vector<std::int64_t>;

inline void check_fraction(std::int64_t n, std::int64_t m) {
    if (n <= m || m < 1)
        throw invalid_fraction("need n > m >= 1, got " + std::to_string(n) + "/" +
                               std::to_string(m));
    if (std::gcd(n, m) != 1)
        throw invalid_fraction("need gcd(n,m) = 1, got " + std::to_string(n) + "/" +
                               std::to_string(m));
}

// Ceiling-division recursion: a = ceil(n/m), then (n, m) <- (m, a*m - n).
// Produces the unique all->=2 expansion.
inline HJExpansion hj_expand(std::int64_t n, std::int64_t m) {
    check_fraction(n, m);
    HJExpansion out;
    while (m > 0) {
        std::int64_t a = (n + m - 1) / m;
        out.push_back(a);
        std::int64_t next_m = a * m - n;
        n = m;
        m = next_m;
    }
    return out;
}

// Exact evaluation back to a coprime pair, computed from the tail inward.
inline std::pair<std::int64_t, std::int64_t> hj_evaluate(const HJExpansion& e) {
    if (e.empty())
        throw invalid_fraction("empty expansion");
    std::int64_t num = 1, den = 0; // value of the empty tail is 1/0 = infinity
    for (auto it = e.rbegin(); it != e.rend(); ++it) {
        if (*it < 2)
            throw invalid_fraction("coefficient " + std::to_string(*it) + " < 2");
        // a - den/num = (a*num - den)/num
        std::int64_t n2 = *it * num - den;
        den = num;
        num = n2;
    }
    return {num, den};
}

inline HJExpansion dual_expansion(std::int64_t n, std::int64_t m) {
    check_fraction(n, m);
    return hj_expand(n, n - m);
}

// Chain of the cyclic quotient p^2/(pq-1), 0 < q < p, gcd(p,q)=1.
inline HJExpansion g_chain(std::int64_t p, std::int64_t q) {
    if (q <= 0 || q >= p)
        throw invalid_fraction("need 0 < q < p");
    if (std::gcd(p, q) != 1)
        throw invalid_fraction("need gcd(p,q) = 1");
    return hj_expand(p * p, p * q - 1);
}

} // namespace qhd
