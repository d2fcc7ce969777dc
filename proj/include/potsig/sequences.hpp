#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "potsig/degree_sequence.hpp"
#include "potsig/errors.hpp"
#include "potsig/graph.hpp"

namespace potsig {

namespace detail {

// Erdos-Gallai on a non-increasing span.
inline bool erdos_gallai_sorted(std::span<const int> d) {
    long total = 0;
    int n = static_cast<int>(d.size());
    for (int x : d) {
        if (x < 0 || x > n - 1)
            return false;
        total += x;
    }
    if (total % 2 != 0)
        return false;
    long prefix = 0;
    for (int k = 1; k <= n; ++k) {
        prefix += d[k - 1];
        long rhs = static_cast<long>(k) * (k - 1);
        for (int i = k; i < n; ++i)
            rhs += std::min(d[i], k);
        if (prefix > rhs)
            return false;
    }
    return true;
}

}  // namespace detail

inline bool is_graphical(const DegreeSequence& s) {
    return detail::erdos_gallai_sorted(s.terms());
}

/// Graphicality of an unsorted multiset of degrees.
inline bool is_graphical_multiset(std::vector<int> degrees) {
    std::sort(degrees.begin(), degrees.end(), std::greater<>());
    return detail::erdos_gallai_sorted(degrees);
}

/// Havel-Hakimi on arbitrary labeled residual degrees.
///
/// Repeatedly takes the vertex of largest residual (lowest label on ties) and
/// joins it to the vertices of next-largest residual (lowest label on ties).
/// Returns the adjacency rows, or nothing if the residuals are not graphical.
inline std::optional<std::vector<VertexMask>> havel_hakimi_rows(std::vector<int> residual) {
    int n = static_cast<int>(residual.size());
    std::vector<VertexMask> rows(static_cast<std::size_t>(n), 0);
    std::vector<int> order(static_cast<std::size_t>(n));
    for (;;) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return residual[a] > residual[b]; });
        int v = order[0];
        int d = residual[v];
        if (d == 0)
            return rows;
        if (d > n - 1 || residual[order[d]] == 0)
            return std::nullopt;
        residual[v] = 0;
        for (int i = 1; i <= d; ++i) {
            int w = order[i];
            --residual[w];
            rows[v] |= VertexMask{1} << w;
            rows[w] |= VertexMask{1} << v;
        }
    }
}

/// Deterministic realization with vertex i of degree s[i].
inline SimpleGraph havel_hakimi_realize(const DegreeSequence& s) {
    if (s.size() > SimpleGraph::kMaxVertices)
        throw SizeLimitError("sequence of length " + std::to_string(s.size()) +
                             " exceeds graph cap");
    if (!is_graphical(s))
        throw NotGraphicalError("sequence (" + to_plain(s) + ") is not graphical");
    auto rows = havel_hakimi_rows(std::vector<int>(s.begin(), s.end()));
    return SimpleGraph::from_rows(std::move(*rows));
}

/// Every graphical sequence of length n with sigma in [sigma_min, sigma_max],
/// ordered by decreasing sigma, then lexicographically ascending.
inline std::vector<DegreeSequence> graphical_sequences(int n, long sigma_min, long sigma_max) {
    std::vector<DegreeSequence> out;
    if (n < 1)
        return out;
    std::vector<int> terms(static_cast<std::size_t>(n));
    // candidates by descending first term; prune on the partial sum range
    std::function<void(int, int, long)> build = [&](int pos, int cap, long sum) {
        if (pos == n) {
            if (sum >= sigma_min && sum <= sigma_max && detail::erdos_gallai_sorted(terms))
                out.emplace_back(terms);
            return;
        }
        long remaining = n - pos;
        if (sum > sigma_max || sum + remaining * cap < sigma_min)
            return;
        for (int t = cap; t >= 0; --t) {
            terms[pos] = t;
            build(pos + 1, t, sum + t);
        }
    };
    build(0, n - 1, 0);
    std::sort(out.begin(), out.end(), [](const DegreeSequence& a, const DegreeSequence& b) {
        long sa = sigma(a);
        long sb = sigma(b);
        if (sa != sb)
            return sa > sb;
        return a < b;
    });
    return out;
}

/// Streams graphical sequences in the order of graphical_sequences(); the
/// visitor returns false to stop early.
template <class Visitor>
void enumerate_graphical(int n, long sigma_min, long sigma_max, Visitor&& visit) {
    for (const auto& s : graphical_sequences(n, sigma_min, sigma_max))
        if (!visit(s))
            return;
}

struct SequenceReduction {
    DegreeSequence sequence;  // S' re-sorted non-increasing
    DecrementRecord record;
    SimpleGraph graph;  // G - v
    int deleted_vertex = -1;
};

/// Deletes a minimum-degree vertex (the highest label among ties) from a
/// realization of S.
inline SequenceReduction delete_min_vertex_sequence(const DegreeSequence& s, const SimpleGraph& g) {
    if (g.order() == 0)
        throw PreconditionError("cannot delete from an empty graph");
    if (degree_sequence(g) != s)
        throw PreconditionError("graph does not realize (" + to_plain(s) + ")");
    int v = g.order() - 1;
    for (int w = g.order() - 1; w >= 0; --w)
        if (g.degree(w) < g.degree(v))
            v = w;
    auto [reduced, record] = delete_vertex(g, v);
    return {degree_sequence(reduced), std::move(record), std::move(reduced), v};
}

/// Adds one vertex (label n) adjacent to the vertices at the recorded degree ranks.
inline SimpleGraph reattach(const SimpleGraph& g1, const DecrementRecord& rec) {
    int n = g1.order();
    if (static_cast<int>(rec.positions.size()) != rec.deleted_degree)
        throw ReattachmentError("record lists " + std::to_string(rec.positions.size()) +
                                " positions for a vertex of degree " +
                                std::to_string(rec.deleted_degree));
    if (n + 1 > SimpleGraph::kMaxVertices)
        throw SizeLimitError("reattachment would exceed graph cap");
    auto order = degree_rank_order(g1);
    VertexMask targets = 0;
    for (int p : rec.positions) {
        if (p < 0 || p >= n)
            throw ReattachmentError("record position " + std::to_string(p) +
                                    " out of range for order " + std::to_string(n));
        int w = order[p];
        if (targets >> w & 1U)
            throw ReattachmentError("record repeats position " + std::to_string(p));
        targets |= VertexMask{1} << w;
    }
    std::vector<VertexMask> rows(g1.rows().begin(), g1.rows().end());
    for (VertexMask m = targets; m; m &= m - 1)
        rows[std::countr_zero(m)] |= VertexMask{1} << n;
    rows.push_back(targets);
    return SimpleGraph::from_rows(std::move(rows));
}

}  // namespace potsig
