#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <vector>

#include "potsig/errors.hpp"
#include "potsig/graph.hpp"

namespace potsig {

inline constexpr int kCanonicalMaxOrder = 9;

/// Isomorphism-invariant key: order plus the edge set of the canonical labeling.
///
/// Bits are indexed by vertex pairs in lexicographic order with (0,1) as the
/// most significant bit, so for a fixed edge count the maximal bit pattern is
/// the lexicographically least sorted edge list.
struct CanonicalKey {
    int n = 0;
    std::uint64_t bits = 0;

    auto operator<=>(const CanonicalKey&) const = default;
};

/// Brute force over all n! relabelings; n <= 9.
inline CanonicalKey canonical_form(const SimpleGraph& g) {
    int n = g.order();
    if (n > kCanonicalMaxOrder)
        throw SizeLimitError("canonical_form supports at most " +
                             std::to_string(kCanonicalMaxOrder) + " vertices, got " +
                             std::to_string(n));
    int pairs = n * (n - 1) / 2;
    // pair_bit[a][b] = bit of pair {a,b} in the key
    std::vector<std::vector<std::uint64_t>> pair_bit(n, std::vector<std::uint64_t>(n, 0));
    int idx = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b, ++idx)
            pair_bit[a][b] = pair_bit[b][a] = std::uint64_t{1} << (pairs - 1 - idx);

    auto edges = g.edges();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = 0;
    do {
        std::uint64_t bits = 0;
        for (auto [u, v] : edges)
            bits |= pair_bit[perm[u]][perm[v]];
        best = std::max(best, bits);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {n, best};
}

inline bool isomorphic(const SimpleGraph& a, const SimpleGraph& b) {
    if (a.order() != b.order() || a.size() != b.size() ||
        degree_sequence(a) != degree_sequence(b))
        return false;
    return canonical_form(a) == canonical_form(b);
}

}  // namespace potsig
