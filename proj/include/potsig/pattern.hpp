#pragma once

#include <bit>
#include <cctype>
#include <charconv>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "potsig/errors.hpp"
#include "potsig/graph.hpp"

namespace potsig {

enum class PatternKind { k4_minus_e, complete, cycle, custom };

/// A small target graph H searched for as a (non-induced) subgraph.
struct Pattern {
    SimpleGraph graph;
    PatternKind kind = PatternKind::custom;
    int k = 0;  // order parameter for complete/cycle patterns

    /// CLI selector form: k4e, k<k>, c<k>, or custom.
    std::string selector() const {
        switch (kind) {
        case PatternKind::k4_minus_e:
            return "k4e";
        case PatternKind::complete:
            return "k" + std::to_string(k);
        case PatternKind::cycle:
            return "c" + std::to_string(k);
        case PatternKind::custom:
            break;
        }
        return "custom";
    }

    int order() const { return graph.order(); }
};

// Vertices 0 and 1 carry degree 3; the missing edge is 2-3.
inline Pattern k4_minus_e() {
    return {SimpleGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}), PatternKind::k4_minus_e, 4};
}

inline Pattern complete_pattern(int k) {
    if (k < 1)
        throw DomainError("complete pattern needs k >= 1");
    return {complete_graph(k), PatternKind::complete, k};
}

inline Pattern cycle_pattern(int k) {
    return {cycle_graph(k), PatternKind::cycle, k};
}

inline Pattern custom_pattern(SimpleGraph g) {
    int k = g.order();
    return {std::move(g), PatternKind::custom, k};
}

/// Parses `k4e`, `k<k>` or `c<k>` (case-insensitive).
inline Pattern parse_pattern_selector(std::string_view text) {
    std::string s;
    for (char c : text)
        s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "k4e" || s == "k4-e")
        return k4_minus_e();
    if (s.size() >= 2 && (s[0] == 'k' || s[0] == 'c')) {
        int k = 0;
        auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), k);
        if (ec == std::errc{} && ptr == s.data() + s.size()) {
            if (s[0] == 'k' && k >= 1 && k <= SimpleGraph::kMaxVertices)
                return complete_pattern(k);
            if (s[0] == 'c' && k >= 3 && k <= SimpleGraph::kMaxVertices)
                return cycle_pattern(k);
        }
    }
    throw ParseError("unknown pattern selector '" + std::string(text) + "'");
}

/// map[a] is the host vertex assigned to pattern vertex a.
struct Embedding {
    std::vector<int> map;

    bool operator==(const Embedding&) const = default;
};

inline bool is_valid_embedding(const SimpleGraph& host, const Pattern& h, const Embedding& e) {
    if (static_cast<int>(e.map.size()) != h.order())
        return false;
    VertexMask used = 0;
    for (int x : e.map) {
        if (x < 0 || x >= host.order() || (used >> x & 1U))
            return false;
        used |= VertexMask{1} << x;
    }
    for (auto [a, b] : h.graph.edges())
        if (!host.has_edge(e.map[a], e.map[b]))
            return false;
    return true;
}

/// Backtracking subgraph matcher over raw adjacency rows.
///
/// Pattern vertices are assigned in label order and host candidates are
/// tried in ascending label, so the first embedding found is the
/// lexicographically least map vector.
class PatternMatcher {
public:
    explicit PatternMatcher(const Pattern& h) : k_(h.order()) {
        for (int a = 0; a < k_; ++a) {
            degree_.push_back(h.graph.degree(a));
            earlier_.push_back(h.graph.neighbors(a) & ((VertexMask{1} << a) - 1));
        }
        edges_ = h.graph.edges();
    }

    std::optional<Embedding> find(std::span<const VertexMask> rows) const {
        int n = static_cast<int>(rows.size());
        if (k_ > n)
            return std::nullopt;
        std::vector<int> map(static_cast<std::size_t>(k_), -1);
        if (k_ == 0 || extend(rows, map, 0, 0))
            return Embedding{std::move(map)};
        return std::nullopt;
    }

    /// Looks only for embeddings whose image uses the host edge {u, v}.
    /// Any embedding into rows that was absent before {u, v} was added must do so.
    std::optional<Embedding> find_through_edge(std::span<const VertexMask> rows, int u, int v) const {
        if (k_ > static_cast<int>(rows.size()))
            return std::nullopt;
        for (auto [a, b] : edges_) {
            for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
                std::vector<int> map(static_cast<std::size_t>(k_), -1);
                map[a] = x;
                map[b] = y;
                if (std::popcount(rows[x]) < degree_[a] || std::popcount(rows[y]) < degree_[b])
                    continue;
                VertexMask used = (VertexMask{1} << x) | (VertexMask{1} << y);
                if (extend(rows, map, 0, used))
                    return Embedding{std::move(map)};
            }
        }
        return std::nullopt;
    }

    bool contained_in(std::span<const VertexMask> rows) const { return find(rows).has_value(); }

private:
    bool extend(std::span<const VertexMask> rows, std::vector<int>& map, int a, VertexMask used) const {
        while (a < k_ && map[a] != -1) {
            // pinned vertex: verify adjacency to every pinned or assigned earlier neighbour
            for (VertexMask m = earlier_[a]; m; m &= m - 1) {
                int b = std::countr_zero(m);
                if (map[b] != -1 && !(rows[map[a]] >> map[b] & 1U))
                    return false;
            }
            ++a;
        }
        if (a == k_)
            return verify_pinned_later(rows, map);
        int n = static_cast<int>(rows.size());
        VertexMask cand = (n == 32 ? ~VertexMask{0} : (VertexMask{1} << n) - 1) & ~used;
        for (VertexMask m = earlier_[a]; m; m &= m - 1) {
            int b = std::countr_zero(m);
            if (map[b] != -1)
                cand &= rows[map[b]];
        }
        for (; cand; cand &= cand - 1) {
            int x = std::countr_zero(cand);
            if (std::popcount(rows[x]) < degree_[a])
                continue;
            if (!adjacent_to_pinned_later(rows, map, a, x))
                continue;
            map[a] = x;
            if (extend(rows, map, a + 1, used | VertexMask{1} << x))
                return true;
            map[a] = -1;
        }
        return false;
    }

    // A pinned vertex with a larger label than `a` is not covered by earlier_[a].
    bool adjacent_to_pinned_later(std::span<const VertexMask> rows, const std::vector<int>& map,
                                  int a, int x) const {
        for (int b = a + 1; b < k_; ++b)
            if (map[b] != -1 && (earlier_[b] >> a & 1U) && !(rows[x] >> map[b] & 1U))
                return false;
        return true;
    }

    bool verify_pinned_later(std::span<const VertexMask> rows, const std::vector<int>& map) const {
        for (auto [a, b] : edges_)
            if (!(rows[map[a]] >> map[b] & 1U))
                return false;
        return true;
    }

    int k_;
    std::vector<int> degree_;
    std::vector<VertexMask> earlier_;
    std::vector<Edge> edges_;
};

/// First embedding of `h` into `g` in lexicographic order of the map, if any.
inline std::optional<Embedding> contains_pattern(const SimpleGraph& g, const Pattern& h) {
    return PatternMatcher(h).find(g.rows());
}

}  // namespace potsig
