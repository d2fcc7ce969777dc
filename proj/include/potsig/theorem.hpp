#pragma once

#include <bit>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "potsig/degree_sequence.hpp"
#include "potsig/errors.hpp"
#include "potsig/formula.hpp"
#include "potsig/graph.hpp"
#include "potsig/oracle.hpp"
#include "potsig/pattern.hpp"
#include "potsig/sequences.hpp"

// Constructive K4 - e engine. Given a graphical sequence at or above the
// threshold, it walks the case analysis on sigma(S): delete a small-degree
// vertex and recurse, rewire with 2-/3-switches so the two degree-2 vertices
// become adjacent, or fall back on explicit constructions and fixtures. The
// realization found for the reduced sequence is lifted back with reattach().

namespace potsig {

enum class CaseLabel {
    base_n4,
    base_n5,
    even_case1,
    even_case2,
    even_case3,
    even_case4,
    odd_case1,
    odd_case2,
    odd_case3,
    exception_3_6,
    delegate_oracle,
};

inline std::string to_string(CaseLabel label) {
    switch (label) {
    case CaseLabel::base_n4: return "BASE_N4";
    case CaseLabel::base_n5: return "BASE_N5";
    case CaseLabel::even_case1: return "EVEN_CASE1";
    case CaseLabel::even_case2: return "EVEN_CASE2";
    case CaseLabel::even_case3: return "EVEN_CASE3";
    case CaseLabel::even_case4: return "EVEN_CASE4";
    case CaseLabel::odd_case1: return "ODD_CASE1";
    case CaseLabel::odd_case2: return "ODD_CASE2";
    case CaseLabel::odd_case3: return "ODD_CASE3";
    case CaseLabel::exception_3_6: return "EXCEPTION_3_6";
    case CaseLabel::delegate_oracle: return "DELEGATE_ORACLE";
    }
    return "?";
}

enum class TraceAction {
    delete_vertex,
    delete_pair,
    two_switch,
    triple_switch,
    fixture,
    construction,
    delegate,
};

inline std::string to_string(TraceAction action) {
    switch (action) {
    case TraceAction::delete_vertex: return "delete-vertex";
    case TraceAction::delete_pair: return "delete-pair";
    case TraceAction::two_switch: return "two-switch";
    case TraceAction::triple_switch: return "triple-switch";
    case TraceAction::fixture: return "fixture";
    case TraceAction::construction: return "construction";
    case TraceAction::delegate: return "delegate";
    }
    return "?";
}

struct TraceStep {
    CaseLabel label;
    int n = 0;
    long sigma = 0;
    TraceAction action;
    std::string detail;     // trailing key=value text, e.g. "v=11"
    int removed_edges = 0;  // edges lost by a deletion step
};

struct CaseTrace {
    std::vector<TraceStep> steps;

    /// One line per step: `case=EVEN_CASE1 n=12 sigma=34 action=delete-vertex v=11`.
    std::string to_text() const {
        std::string out;
        for (const auto& s : steps) {
            out += "case=" + to_string(s.label) + " n=" + std::to_string(s.n) +
                   " sigma=" + std::to_string(s.sigma) + " action=" + to_string(s.action);
            if (!s.detail.empty())
                out += " " + s.detail;
            out += "\n";
        }
        return out;
    }
};

enum class OutcomeKind { realized, exceptional, below_threshold };

inline std::string to_string(OutcomeKind kind) {
    switch (kind) {
    case OutcomeKind::realized: return "REALIZED";
    case OutcomeKind::exceptional: return "EXCEPTIONAL";
    case OutcomeKind::below_threshold: return "BELOW_THRESHOLD";
    }
    return "?";
}

struct TheoremOutcome {
    OutcomeKind kind = OutcomeKind::below_threshold;
    std::optional<Witness> witness;
    CaseTrace trace;
};

// Fixture graphs for the n = 7 sequences. Labels 0..3 are the top row T1..T4, 4..6 the bottom row B1..B3.

/// Realizes (4^1,3^5,1^1).
inline SimpleGraph fixture_f1() {
    return SimpleGraph(7, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {0, 4}, {1, 4}, {0, 5}, {1, 6}, {2, 6}});
}

/// Realizes (4^2,3^4,2^1).
inline SimpleGraph fixture_f2a() {
    return SimpleGraph(7, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {0, 4}, {1, 4}, {0, 5}, {1, 6}, {2, 6},
                           {3, 6}});
}

/// Realizes (4^3,3^4).
inline SimpleGraph fixture_f2b() {
    return SimpleGraph(7, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {4, 5}, {5, 6}, {4, 6}, {0, 4}, {1, 4}, {0, 5},
                           {2, 6}, {3, 6}});
}

/// One switch applied while creating an edge between two degree-2 vertices.
struct SwitchMove {
    TraceAction kind;  // two_switch or triple_switch
    std::vector<Edge> removed;
    std::vector<Edge> inserted;
};

struct NormalizeResult {
    enum class Kind { edge_created, pattern_found };
    Kind kind = Kind::edge_created;
    // edge_created: the rewired graph; pattern_found: the input graph
    SimpleGraph graph;
    std::optional<Embedding> embedding;  // K4 - e found along the way
    std::vector<SwitchMove> moves;
};

/// Makes {u, v} an edge of a realization of the same degree sequence, where
/// u and v are non-adjacent vertices of degree 2.
///
/// v plays the last vertex (neighbours x, y) and u the one before it. When a
/// subcase exposes a K4 - e in g itself, that copy is reported instead.
inline NormalizeResult normalize_make_edge(const SimpleGraph& g, int u, int v) {
    if (u < 0 || v < 0 || u >= g.order() || v >= g.order() || u == v)
        throw PreconditionError("normalize_make_edge needs two distinct vertices of the graph");
    if (g.degree(u) != 2 || g.degree(v) != 2)
        throw PreconditionError("normalize_make_edge needs both vertices of degree 2");
    if (g.has_edge(u, v))
        throw PreconditionError("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                                " are already adjacent");

    auto two_lowest = [](VertexMask m) {
        int first = std::countr_zero(m);
        m &= m - 1;
        return std::pair{first, std::countr_zero(m)};
    };
    auto [x, y] = two_lowest(g.neighbors(v));

    NormalizeResult result;
    auto found = [&](std::vector<int> map) {
        result.kind = NormalizeResult::Kind::pattern_found;
        result.graph = g;
        result.embedding = Embedding{std::move(map)};
        return result;
    };
    auto switched = [&](SimpleGraph next, SwitchMove move) {
        if (!next.has_edge(u, v) || degrees(next) != degrees(g))
            throw NormalizationStuckError("switch did not produce the requested edge");
        result.kind = NormalizeResult::Kind::edge_created;
        result.graph = std::move(next);
        result.moves.push_back(std::move(move));
        return result;
    };

    try {
        if (g.has_edge(u, x) && g.has_edge(u, y)) {
            if (g.has_edge(x, y))
                return found({x, y, u, v});
            // remove x-u, y-v; insert x-y, u-v
            return switched(two_switch(g, {x, u}, {y, v}),
                            {TraceAction::two_switch, {make_edge(x, u), make_edge(y, v)},
                             {make_edge(x, y), make_edge(u, v)}});
        }
        int p = g.has_edge(u, x) ? y : x;  // a neighbour of v not adjacent to u
        auto [z1, z2] = two_lowest(g.neighbors(u));
        for (int z : {z1, z2}) {
            if (!g.has_edge(p, z)) {
                // remove z-u, p-v; insert z-p, u-v
                return switched(two_switch(g, {z, u}, {p, v}),
                                {TraceAction::two_switch, {make_edge(z, u), make_edge(p, v)},
                                 {make_edge(z, p), make_edge(u, v)}});
            }
        }
        if (g.has_edge(z1, z2))
            return found({z1, z2, p, u});
        // remove u-z1, u-z2, v-p; insert u-v, z1-z2, u-p
        return switched(triple_switch(g, make_edge(u, z1), make_edge(u, z2), make_edge(v, p)),
                        {TraceAction::triple_switch,
                         {make_edge(u, z1), make_edge(u, z2), make_edge(v, p)},
                         {make_edge(u, v), make_edge(z1, z2), make_edge(u, p)}});
    } catch (const RejectedSwitchError& e) {
        throw NormalizationStuckError(std::string("edge interchange not applicable: ") + e.what());
    }
}

namespace detail {

struct Partial {
    bool exceptional = false;
    SimpleGraph graph;  // vertex i has degree S[i]
    Embedding embedding;
};

// Internal failure of the case ladder; handled by an exhaustive fallback.
struct LadderFailure : Error {
    using Error::Error;
};

inline Partial relabel_sorted(const SimpleGraph& g, const Embedding& e) {
    auto new_label = rank_relabeling(g);
    Embedding mapped;
    for (int x : e.map)
        mapped.map.push_back(new_label[x]);
    return {false, permute(g, new_label), std::move(mapped)};
}

inline Partial from_graph(const SimpleGraph& g) {
    auto emb = contains_pattern(g, k4_minus_e());
    if (!emb)
        throw LadderFailure("constructed graph has no K4-e");
    return relabel_sorted(g, *emb);
}

inline std::string edges_text(const std::vector<Edge>& edges) {
    std::string out;
    for (auto e : edges) {
        if (!out.empty())
            out += ',';
        out += to_string(e);
    }
    return out;
}

class ConstructiveEngine {
public:
    explicit ConstructiveEngine(const OracleConfig& cfg, std::optional<SimpleGraph> start = {})
        : cfg_(cfg), start_(std::move(start)) {}

    CaseTrace trace;

    Partial solve(const DegreeSequence& s) {
        ++depth_;
        struct Leave {
            int& depth;
            ~Leave() { --depth; }
        } leave{depth_};
        int n = s.size();
        long sig = sigma(s);
        if (sig < induction_threshold(n))
            throw InconsistencyError("recursion reached (" + to_plain(s) + ") below threshold");
        try {
            if (n == 4)
                return base(s, CaseLabel::base_n4);
            if (n == 5)
                return base(s, CaseLabel::base_n5);
            return n % 2 == 0 ? even(s) : odd(s);
        } catch (const LadderFailure& failure) {
            return fallback(s, failure.what());
        } catch (const NormalizationStuckError& failure) {
            return fallback(s, failure.what());
        }
    }

private:
    void step(CaseLabel label, const DegreeSequence& s, TraceAction action, std::string detail = {},
              int removed_edges = 0) {
        trace.steps.push_back({label, s.size(), sigma(s), action, std::move(detail), removed_edges});
    }

    // n = 4 with q >= 5 edges, or n = 5 with q >= 7 edges: every such graph
    // contains K4 - e, so the first realization serves.
    Partial base(const DegreeSequence& s, CaseLabel label) {
        step(label, s, TraceAction::construction, "realization=havel-hakimi");
        return from_graph(realization(s));
    }

    // Deletes the last vertex of g, solves the reduced sequence, lifts back.
    Partial delete_last_and_recurse(CaseLabel label, const DegreeSequence& s, const SimpleGraph& g) {
        int v = s.size() - 1;
        auto [reduced, record] = delete_vertex(g, v);
        step(label, s, TraceAction::delete_vertex, "v=" + std::to_string(v), record.deleted_degree);
        auto sub = solve(degree_sequence(reduced));
        if (sub.exceptional)
            return sub;
        return lift(sub, record);
    }

    static Partial lift(const Partial& sub, const DecrementRecord& record) {
        auto g = reattach(sub.graph, record);
        return relabel_sorted(g, sub.embedding);
    }

    Partial even(const DegreeSequence& s) {
        int n = s.size();
        long sig = sigma(s);
        if (sig == 3L * n - 2)
            return even_case1(s);
        if (sig == 3L * n) {
            if (s.back() <= 2)
                return delete_last_and_recurse(CaseLabel::even_case2, s, realization(s));
            // every term is 3
            if (n == 6) {
                step(CaseLabel::exception_3_6, s, TraceAction::construction, "exceptional=3^6");
                return {true, {}, {}};
            }
            int p = n / 4;
            SimpleGraph g;
            std::string what;
            if (n % 4 == 0) {
                g = empty_graph(0);
                what = "construction=" + std::to_string(p) + "K4";
            } else {
                g = complete_bipartite(3, 3);
                p -= 1;
                what = "construction=K3,3+" + std::to_string(p) + "K4";
            }
            for (int i = 0; i < p; ++i)
                g = disjoint_union(g, complete_graph(4));
            step(CaseLabel::even_case2, s, TraceAction::construction, what);
            return from_graph(g);
        }
        if (sig <= 4L * n - 2) {
            if (s.back() > 3)
                throw LadderFailure("expected a vertex of degree at most 3");
            return delete_last_and_recurse(CaseLabel::even_case3, s, realization(s));
        }
        if (n >= 8)
            return delegate_k4(CaseLabel::even_case4, s);
        // n = 6
        if (sig <= 5L * n - 2)
            return delete_last_and_recurse(CaseLabel::even_case4, s, realization(s));
        step(CaseLabel::even_case4, s, TraceAction::construction, "construction=K6");
        return from_graph(complete_graph(6));
    }

    Partial even_case1(const DegreeSequence& s) {
        int n = s.size();
        auto g = realization(s);
        if (s.back() <= 1)
            return delete_last_and_recurse(CaseLabel::even_case1, s, g);
        if (s[n - 1] != 2 || s[n - 2] != 2)
            throw LadderFailure("expected the two smallest terms to equal 2");
        int u = n - 2;
        int v = n - 1;
        if (!g.has_edge(u, v)) {
            auto norm = normalize_make_edge(g, u, v);
            for (const auto& move : norm.moves)
                step(CaseLabel::even_case1, s, move.kind,
                     "remove=" + edges_text(move.removed) + " insert=" + edges_text(move.inserted));
            if (norm.kind == NormalizeResult::Kind::pattern_found) {
                step(CaseLabel::even_case1, s, TraceAction::construction, "k4e=in-realization");
                return relabel_sorted(norm.graph, *norm.embedding);
            }
            g = norm.graph;
        }
        // v_{n-1} v_n is an edge: remove v_n, then v_{n-1}
        auto [without_v, record_v] = delete_vertex(g, v);
        auto [without_pair, record_u] = delete_vertex(without_v, u);
        step(CaseLabel::even_case1, s, TraceAction::delete_pair,
             "v=" + std::to_string(u) + "," + std::to_string(v), 3);
        auto reduced = degree_sequence(without_pair);
        if (reduced == constant_sequence(3, 6))
            throw LadderFailure("pair deletion reached (3^6)");
        auto sub = solve(reduced);
        if (sub.exceptional)
            throw LadderFailure("unexpected exceptional sub-result");
        auto mid = lift(sub, record_u);
        return lift(mid, record_v);
    }

    Partial odd(const DegreeSequence& s) {
        int n = s.size();
        long sig = sigma(s);
        if (sig == 3L * n - 1) {
            if (s.back() > 2)
                throw LadderFailure("sigma = 3n - 1 but the smallest term exceeds 2");
            return odd_with_fixtures(CaseLabel::odd_case1, s);
        }
        if (sig <= 4L * n - 2) {
            if (s.back() > 3)
                throw LadderFailure("expected a vertex of degree at most 3");
            return odd_with_fixtures(CaseLabel::odd_case2, s);
        }
        if (n >= 9)
            return delegate_k4(CaseLabel::odd_case3, s);
        // n = 7
        if (sig <= 5L * n - 1)
            return delete_last_and_recurse(CaseLabel::odd_case3, s, realization(s));
        return delegate_k4(CaseLabel::odd_case3, s);
    }

    // At n = 7 the sequences whose reduction can land on (3^6) are served by
    // the fixture graphs.
    Partial odd_with_fixtures(CaseLabel label, const DegreeSequence& s) {
        if (auto fixture = fixture_for(s)) {
            step(label, s, TraceAction::fixture, "fixture=" + fixture->first);
            return from_graph(fixture->second);
        }
        auto sub = delete_last_and_recurse(label, s, realization(s));
        if (sub.exceptional)
            throw LadderFailure("reduction reached (3^6) outside the fixture sequences");
        return sub;
    }

    static std::optional<std::pair<std::string, SimpleGraph>> fixture_for(const DegreeSequence& s) {
        if (s == DegreeSequence{4, 3, 3, 3, 3, 3, 1})
            return std::pair{std::string("F1"), fixture_f1()};
        if (s == DegreeSequence{4, 4, 3, 3, 3, 3, 2})
            return std::pair{std::string("F2a"), fixture_f2a()};
        if (s == DegreeSequence{4, 4, 4, 3, 3, 3, 3})
            return std::pair{std::string("F2b"), fixture_f2b()};
        return std::nullopt;
    }

    // sigma >= 4n for larger n: a realization containing K4 exists; search for it exhaustively.
    Partial delegate_k4(CaseLabel label, const DegreeSequence& s) {
        step(label, s, TraceAction::delegate, "pattern=k4");
        auto verdict = is_potentially(s, complete_pattern(4), cfg_);
        if (verdict.kind != Verdict::yes)
            throw LadderFailure("no realization containing K4");
        return from_graph(verdict.witness->graph);
    }

    Partial fallback(const DegreeSequence& s, const std::string& why) {
        step(CaseLabel::delegate_oracle, s, TraceAction::delegate, "pattern=k4e reason=\"" + why + "\"");
        auto verdict = is_potentially(s, k4_minus_e(), cfg_);
        if (verdict.kind == Verdict::yes)
            return relabel_sorted(verdict.witness->graph, verdict.witness->embedding);
        if (s == constant_sequence(3, 6))
            return {true, {}, {}};
        throw InconsistencyError("(" + to_plain(s) + ") is not potentially K4-e");
    }

    // The caller's realization serves the top level only; deeper levels use Havel-Hakimi.
    SimpleGraph realization(const DegreeSequence& s) {
        if (depth_ == 1 && start_)
            return *start_;
        return havel_hakimi_realize(s);
    }

    OracleConfig cfg_;
    std::optional<SimpleGraph> start_;
    int depth_ = 0;
};

}  // namespace detail

namespace detail {

inline TheoremOutcome run_constructive(const DegreeSequence& s, const OracleConfig& cfg,
                                       std::optional<SimpleGraph> start) {
    int n = s.size();
    if (n < 4)
        throw DomainError("constructive engine needs n >= 4, got n = " + std::to_string(n));
    if (n > SimpleGraph::kMaxVertices)
        throw SizeLimitError("sequence of length " + std::to_string(n) + " exceeds graph cap");
    if (!is_graphical(s))
        throw NotGraphicalError("sequence (" + to_plain(s) + ") is not graphical");

    TheoremOutcome outcome;
    if (sigma(s) < induction_threshold(n)) {
        outcome.kind = OutcomeKind::below_threshold;
        return outcome;
    }
    ConstructiveEngine engine(cfg, std::move(start));
    auto result = engine.solve(s);
    outcome.trace = std::move(engine.trace);
    if (result.exceptional) {
        if (s != constant_sequence(3, 6))
            throw InconsistencyError("exceptional outcome for (" + to_plain(s) + ")");
        outcome.kind = OutcomeKind::exceptional;
        return outcome;
    }
    auto h = k4_minus_e();
    bool valid = degrees(result.graph) == std::vector<int>(s.begin(), s.end()) &&
                 is_valid_embedding(result.graph, h, result.embedding);
    if (!valid) {
        outcome.trace.steps.push_back({CaseLabel::delegate_oracle, n, sigma(s), TraceAction::delegate,
                                       "pattern=k4e reason=\"witness failed validation\"", 0});
        auto verdict = is_potentially(s, h, cfg);
        if (verdict.kind != Verdict::yes)
            throw InconsistencyError("(" + to_plain(s) + ") is not potentially K4-e");
        result.graph = verdict.witness->graph;
        result.embedding = verdict.witness->embedding;
    }
    outcome.kind = OutcomeKind::realized;
    outcome.witness = Witness{std::move(result.graph), std::move(result.embedding)};
    return outcome;
}

}  // namespace detail

/// Decides potential K4 - e graphicality constructively for sigma(S) at or
/// above 2*floor((3n-1)/2); below that no claim is made.
///
/// Witnesses are re-validated (degree sequence and embedding) before return;
/// a failed validation is answered by the exhaustive engine instead. The
/// returned witness has vertex i of degree s[i].
inline TheoremOutcome potentially_k4e_constructive(const DegreeSequence& s,
                                                   const OracleConfig& cfg = {}) {
    return detail::run_constructive(s, cfg, std::nullopt);
}

/// Same, but the top level of the case analysis starts from `g` instead of
/// the Havel-Hakimi realization of its degree sequence.
inline TheoremOutcome potentially_k4e_from_realization(const SimpleGraph& g,
                                                       const OracleConfig& cfg = {}) {
    return detail::run_constructive(degree_sequence(g), cfg, permute(g, rank_relabeling(g)));
}

}  // namespace potsig
