#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "potsig/degree_sequence.hpp"
#include "potsig/errors.hpp"

namespace potsig {

using VertexMask = std::uint32_t;

/// Unordered vertex pair, stored with u < v.
struct Edge {
    int u = 0;
    int v = 0;

    auto operator<=>(const Edge&) const = default;
};

inline Edge make_edge(int a, int b) {
    return a < b ? Edge{a, b} : Edge{b, a};
}

inline std::string to_string(Edge e) {
    return std::to_string(e.u) + "-" + std::to_string(e.v);
}

/// Labeled simple graph on vertices 0..n-1, one adjacency bitmask per vertex.
///
/// Values are immutable once built; every transformation returns a new graph.
class SimpleGraph {
public:
    static constexpr int kMaxVertices = 31;

    SimpleGraph() = default;

    explicit SimpleGraph(int n) : n_(n), rows_(checked_order(n), 0) {}

    SimpleGraph(int n, std::span<const Edge> edges) : SimpleGraph(n) {
        for (auto [a, b] : edges) {
            if (a < 0 || b < 0 || a >= n || b >= n)
                throw InvalidGraphError("edge " + std::to_string(a) + "-" + std::to_string(b) +
                                        " out of range for order " + std::to_string(n));
            if (a == b)
                throw InvalidGraphError("self-loop at vertex " + std::to_string(a));
            if (rows_[a] >> b & 1U)
                throw InvalidGraphError("duplicate edge " + std::to_string(a) + "-" +
                                        std::to_string(b));
            rows_[a] |= VertexMask{1} << b;
            rows_[b] |= VertexMask{1} << a;
        }
    }

    SimpleGraph(int n, std::initializer_list<Edge> edges)
        : SimpleGraph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

    /// Builds from adjacency rows; rejects asymmetric rows, loops, or stray bits.
    static SimpleGraph from_rows(std::vector<VertexMask> rows) {
        int n = static_cast<int>(rows.size());
        checked_order(n);
        VertexMask all = n == 32 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
        for (int v = 0; v < n; ++v) {
            if (rows[v] & ~all)
                throw InvalidGraphError("adjacency row " + std::to_string(v) + " out of range");
            if (rows[v] >> v & 1U)
                throw InvalidGraphError("self-loop at vertex " + std::to_string(v));
            for (VertexMask m = rows[v]; m; m &= m - 1) {
                int w = std::countr_zero(m);
                if (!(rows[w] >> v & 1U))
                    throw InvalidGraphError("asymmetric adjacency between " + std::to_string(v) +
                                            " and " + std::to_string(w));
            }
        }
        SimpleGraph g;
        g.n_ = n;
        g.rows_ = std::move(rows);
        return g;
    }

    int order() const { return n_; }

    int size() const {
        int total = 0;
        for (auto r : rows_)
            total += std::popcount(r);
        return total / 2;
    }

    bool has_edge(int a, int b) const {
        return a >= 0 && b >= 0 && a < n_ && b < n_ && (rows_[a] >> b & 1U);
    }

    int degree(int v) const { return std::popcount(rows_[v]); }
    VertexMask neighbors(int v) const { return rows_[v]; }
    std::span<const VertexMask> rows() const { return rows_; }

    /// Edges sorted lexicographically, each with u < v.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (int u = 0; u < n_; ++u)
            for (VertexMask m = rows_[u] >> (u + 1); m; m &= m - 1)
                out.push_back({u, u + 1 + std::countr_zero(m)});
        return out;
    }

    auto operator<=>(const SimpleGraph&) const = default;

private:
    static std::size_t checked_order(int n) {
        if (n < 0 || n > kMaxVertices)
            throw SizeLimitError("graph order " + std::to_string(n) + " outside [0, " +
                                 std::to_string(kMaxVertices) + "]");
        return static_cast<std::size_t>(n);
    }

    int n_ = 0;
    std::vector<VertexMask> rows_;
};

inline SimpleGraph empty_graph(int n) {
    return SimpleGraph(n);
}

inline SimpleGraph complete_graph(int k) {
    std::vector<Edge> edges;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            edges.push_back({a, b});
    return SimpleGraph(k, edges);
}

inline SimpleGraph cycle_graph(int k) {
    if (k < 3)
        throw DomainError("cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (int a = 0; a < k; ++a)
        edges.push_back(make_edge(a, (a + 1) % k));
    return SimpleGraph(k, edges);
}

/// K_{a,b} with parts {0..a-1} and {a..a+b-1}.
inline SimpleGraph complete_bipartite(int a, int b) {
    std::vector<Edge> edges;
    for (int x = 0; x < a; ++x)
        for (int y = a; y < a + b; ++y)
            edges.push_back({x, y});
    return SimpleGraph(a + b, edges);
}

/// Degrees by vertex label.
inline std::vector<int> degrees(const SimpleGraph& g) {
    std::vector<int> out(static_cast<std::size_t>(g.order()));
    for (int v = 0; v < g.order(); ++v)
        out[v] = g.degree(v);
    return out;
}

inline DegreeSequence degree_sequence(const SimpleGraph& g) {
    return sorted_sequence(degrees(g));
}

/// Vertices ordered by degree (descending), ties by lowest label.
/// Entry p is the vertex holding degree rank p.
inline std::vector<int> degree_rank_order(const SimpleGraph& g) {
    std::vector<int> order(static_cast<std::size_t>(g.order()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    return order;
}

/// Relabels vertex v as new_label[v]. `new_label` must be a permutation.
inline SimpleGraph permute(const SimpleGraph& g, std::span<const int> new_label) {
    int n = g.order();
    if (static_cast<int>(new_label.size()) != n)
        throw InvalidGraphError("permutation size mismatch");
    std::vector<VertexMask> rows(static_cast<std::size_t>(n), 0);
    VertexMask seen = 0;
    for (int v = 0; v < n; ++v) {
        int p = new_label[v];
        if (p < 0 || p >= n || (seen >> p & 1U))
            throw InvalidGraphError("relabeling is not a permutation");
        seen |= VertexMask{1} << p;
    }
    for (int v = 0; v < n; ++v)
        for (VertexMask m = g.neighbors(v); m; m &= m - 1)
            rows[new_label[v]] |= VertexMask{1} << new_label[std::countr_zero(m)];
    return SimpleGraph::from_rows(std::move(rows));
}

/// Permutation (old label -> new label) that puts vertices in degree rank order,
/// so that vertex i of the relabeled graph has the i-th largest degree.
inline std::vector<int> rank_relabeling(const SimpleGraph& g) {
    auto order = degree_rank_order(g);
    std::vector<int> new_label(order.size());
    for (std::size_t p = 0; p < order.size(); ++p)
        new_label[order[p]] = static_cast<int>(p);
    return new_label;
}

/// Removes edges ab and cd and inserts ac and bd.
///
/// Requires ab, cd present, a, b, c, d pairwise distinct, and ac, bd absent.
inline SimpleGraph two_switch(const SimpleGraph& g, std::pair<int, int> ab, std::pair<int, int> cd) {
    auto [a, b] = ab;
    auto [c, d] = cd;
    auto reject = [&](const std::string& why) {
        throw RejectedSwitchError("rejected 2-switch on (" + std::to_string(a) + "," +
                                  std::to_string(b) + ") and (" + std::to_string(c) + "," +
                                  std::to_string(d) + "): " + why);
    };
    if (!g.has_edge(a, b))
        reject("pair (" + std::to_string(a) + "," + std::to_string(b) + ") is not an edge");
    if (!g.has_edge(c, d))
        reject("pair (" + std::to_string(c) + "," + std::to_string(d) + ") is not an edge");
    if (a == c || a == d || b == c || b == d)
        reject("endpoints are not pairwise distinct");
    if (g.has_edge(a, c))
        reject("pair (" + std::to_string(a) + "," + std::to_string(c) + ") is already an edge");
    if (g.has_edge(b, d))
        reject("pair (" + std::to_string(b) + "," + std::to_string(d) + ") is already an edge");

    std::vector<VertexMask> rows(g.rows().begin(), g.rows().end());
    auto toggle = [&](int x, int y) {
        rows[x] ^= VertexMask{1} << y;
        rows[y] ^= VertexMask{1} << x;
    };
    toggle(a, b);
    toggle(c, d);
    toggle(a, c);
    toggle(b, d);
    return SimpleGraph::from_rows(std::move(rows));
}

/// Three-edge interchange around a centre vertex u.
///
/// Given edges u-z1, u-z2 (sharing exactly the vertex u) and an edge w-x,
/// removes all three and inserts u-w, u-x and z1-z2. Every degree is
/// preserved. Applying it to (u-w, u-x, z1-z2) undoes it.
inline SimpleGraph triple_switch(const SimpleGraph& g, Edge first_at_u, Edge second_at_u, Edge wx) {
    auto reject = [&](const std::string& why) {
        throw RejectedSwitchError("rejected 3-switch on " + to_string(first_at_u) + ", " +
                                  to_string(second_at_u) + ", " + to_string(wx) + ": " + why);
    };
    first_at_u = make_edge(first_at_u.u, first_at_u.v);
    second_at_u = make_edge(second_at_u.u, second_at_u.v);
    wx = make_edge(wx.u, wx.v);

    int u = -1;
    int z1 = -1;
    int z2 = -1;
    for (int cand : {first_at_u.u, first_at_u.v}) {
        if (cand == second_at_u.u || cand == second_at_u.v) {
            if (u != -1)
                reject("the two centre edges coincide");
            u = cand;
        }
    }
    if (u == -1)
        reject("the first two edges do not share a vertex");
    z1 = first_at_u.u == u ? first_at_u.v : first_at_u.u;
    z2 = second_at_u.u == u ? second_at_u.v : second_at_u.u;
    int w = wx.u;
    int x = wx.v;

    for (auto e : {first_at_u, second_at_u, wx})
        if (!g.has_edge(e.u, e.v))
            reject("pair " + to_string(e) + " is not an edge");
    int verts[] = {u, z1, z2, w, x};
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (verts[i] == verts[j])
                reject("the five endpoints are not pairwise distinct");
    for (auto e : {make_edge(u, w), make_edge(u, x), make_edge(z1, z2)})
        if (g.has_edge(e.u, e.v))
            reject("pair " + to_string(e) + " is already an edge");

    std::vector<VertexMask> rows(g.rows().begin(), g.rows().end());
    auto toggle = [&](int p, int q) {
        rows[p] ^= VertexMask{1} << q;
        rows[q] ^= VertexMask{1} << p;
    };
    toggle(u, z1);
    toggle(u, z2);
    toggle(w, x);
    toggle(u, w);
    toggle(u, x);
    toggle(z1, z2);
    return SimpleGraph::from_rows(std::move(rows));
}

struct DeletionResult {
    SimpleGraph graph;
    DecrementRecord record;
};

/// G - v with survivors keeping their relative order. The record lists the
/// degree ranks (in G - v) of the former neighbours of v.
inline DeletionResult delete_vertex(const SimpleGraph& g, int v) {
    int n = g.order();
    if (v < 0 || v >= n)
        throw PreconditionError("vertex " + std::to_string(v) + " not in graph of order " +
                                std::to_string(n));
    std::vector<VertexMask> rows;
    rows.reserve(static_cast<std::size_t>(n - 1));
    auto compact = [v](VertexMask m) {
        VertexMask low = m & ((VertexMask{1} << v) - 1);
        VertexMask high = v + 1 < 32 ? m >> (v + 1) : 0;
        return low | (high << v);
    };
    for (int w = 0; w < n; ++w)
        if (w != v)
            rows.push_back(compact(g.neighbors(w)));
    auto reduced = SimpleGraph::from_rows(std::move(rows));

    auto new_label = rank_relabeling(reduced);
    DecrementRecord record;
    record.deleted_degree = g.degree(v);
    for (VertexMask m = g.neighbors(v); m; m &= m - 1) {
        int w = std::countr_zero(m);
        record.positions.push_back(new_label[w < v ? w : w - 1]);
    }
    std::sort(record.positions.begin(), record.positions.end());
    return {std::move(reduced), std::move(record)};
}

/// Disjoint union; vertices of `h` are shifted by g.order().
inline SimpleGraph disjoint_union(const SimpleGraph& g, const SimpleGraph& h) {
    int n = g.order() + h.order();
    if (n > SimpleGraph::kMaxVertices)
        throw SizeLimitError("disjoint union of order " + std::to_string(n) + " exceeds cap");
    std::vector<VertexMask> rows(g.rows().begin(), g.rows().end());
    for (auto r : h.rows())
        rows.push_back(r << g.order());
    return SimpleGraph::from_rows(std::move(rows));
}

/// Edge-list text: `n m` then m lines `u v` (u < v, sorted), LF terminated.
inline std::string to_edge_list(const SimpleGraph& g) {
    auto edges = g.edges();
    std::string out = std::to_string(g.order()) + " " + std::to_string(edges.size()) + "\n";
    for (auto [u, v] : edges)
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

inline SimpleGraph parse_edge_list(std::string_view text) {
    if (text.find('\r') != std::string_view::npos)
        throw ParseError("edge list must use LF line endings");
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    if (lines.empty())
        throw ParseError("edge list is empty");

    auto two_ints = [](std::string_view line, int lineno) {
        auto sp = line.find(' ');
        auto num = [&](std::string_view tok) {
            int value = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
            if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
                throw ParseError("line " + std::to_string(lineno) + ": malformed integer '" +
                                 std::string(tok) + "'");
            return value;
        };
        if (sp == std::string_view::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected two integers");
        return std::pair{num(line.substr(0, sp)), num(line.substr(sp + 1))};
    };

    auto [n, m] = two_ints(lines[0], 1);
    if (n < 0 || n > SimpleGraph::kMaxVertices)
        throw ParseError("vertex count " + std::to_string(n) + " out of range");
    if (m < 0 || static_cast<std::size_t>(m) != lines.size() - 1)
        throw ParseError("header declares " + std::to_string(m) + " edges but found " +
                         std::to_string(lines.size() - 1));
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto [u, v] = two_ints(lines[i], static_cast<int>(i + 1));
        if (!(u < v))
            throw ParseError("line " + std::to_string(i + 1) + ": expected u < v");
        if (u < 0 || v >= n)
            throw ParseError("line " + std::to_string(i + 1) + ": vertex out of range");
        Edge e{u, v};
        if (!edges.empty() && !(edges.back() < e))
            throw ParseError("line " + std::to_string(i + 1) + ": edges not strictly sorted");
        edges.push_back(e);
    }
    return SimpleGraph(n, edges);
}

}  // namespace potsig
