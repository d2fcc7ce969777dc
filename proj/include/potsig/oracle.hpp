#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <deque>
#include <exception>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "potsig/degree_sequence.hpp"
#include "potsig/errors.hpp"
#include "potsig/formula.hpp"
#include "potsig/graph.hpp"
#include "potsig/pattern.hpp"
#include "potsig/sequences.hpp"

namespace potsig {

inline constexpr int kDefaultOracleCap = 10;
inline constexpr int kExtremalMaxOrder = 8;

struct OracleConfig {
    int cap = kDefaultOracleCap;  // largest n the exhaustive routines accept
    int workers = 1;              // threads used per sigma level
};

enum class SearchStep { proceed, prune, stop };

namespace detail {

// Row-by-row backtracking over labeled realizations of a degree vector.
//
// Row i picks the neighbours of vertex i among higher labels, lowest labels
// first. After each row the residual degrees of the untouched vertices must
// still be graphical; since no edge among them is decided yet, that test is
// exact and every surviving branch ends in at least one realization.
template <class OnRow, class OnLeaf>
class RealizationWalker {
public:
    RealizationWalker(std::span<const int> degrees, OnRow& on_row, OnLeaf& on_leaf)
        : n_(static_cast<int>(degrees.size())),
          residual_(degrees.begin(), degrees.end()),
          rows_(degrees.size(), 0),
          on_row_(on_row),
          on_leaf_(on_leaf) {}

    // false when a callback asked to stop
    bool run() {
        if (!is_graphical_multiset(residual_))
            return true;
        return row(0);
    }

private:
    bool row(int i) {
        while (i < n_ && residual_[i] == 0)
            ++i;
        if (i == n_)
            return on_leaf_(std::span<const VertexMask>(rows_));
        int need = residual_[i];
        residual_[i] = 0;
        bool keep_going = choose(i, i + 1, need);
        residual_[i] = need;
        return keep_going;
    }

    bool choose(int i, int from, int need) {
        if (need == 0) {
            scratch_.assign(residual_.begin() + i + 1, residual_.end());
            if (!is_graphical_multiset(scratch_))
                return true;
            switch (on_row_(std::span<const VertexMask>(rows_), std::span<const int>(residual_), i)) {
            case SearchStep::stop:
                return false;
            case SearchStep::prune:
                return true;
            case SearchStep::proceed:
                break;
            }
            return row(i + 1);
        }
        int available = 0;
        for (int j = from; j < n_; ++j)
            available += residual_[j] > 0;
        for (int j = from; j < n_ && available >= need; ++j) {
            if (residual_[j] == 0)
                continue;
            --available;
            VertexMask bi = VertexMask{1} << i;
            VertexMask bj = VertexMask{1} << j;
            rows_[i] |= bj;
            rows_[j] |= bi;
            --residual_[j];
            bool keep_going = choose(i, j + 1, need - 1);
            ++residual_[j];
            rows_[i] &= ~bj;
            rows_[j] &= ~bi;
            if (!keep_going)
                return false;
        }
        return true;
    }

    int n_;
    std::vector<int> residual_;
    std::vector<VertexMask> rows_;
    std::vector<int> scratch_;
    OnRow& on_row_;
    OnLeaf& on_leaf_;
};

inline void check_cap(int n, const OracleConfig& cfg) {
    if (n > cfg.cap)
        throw SizeLimitError("n = " + std::to_string(n) + " exceeds oracle cap " +
                             std::to_string(cfg.cap));
}

inline void check_realizable(const DegreeSequence& s, const OracleConfig& cfg) {
    check_cap(s.size(), cfg);
    if (!is_graphical(s))
        throw NotGraphicalError("sequence (" + to_plain(s) + ") is not graphical");
}

// Partial rows plus a Havel-Hakimi completion of the residual degrees.
inline SimpleGraph complete_partial(std::span<const VertexMask> rows, std::span<const int> residual) {
    auto rest = havel_hakimi_rows(std::vector<int>(residual.begin(), residual.end()));
    if (!rest)
        throw InconsistencyError("residual degrees of a feasible branch are not graphical");
    std::vector<VertexMask> out(rows.begin(), rows.end());
    for (std::size_t v = 0; v < out.size(); ++v)
        out[v] |= (*rest)[v];
    return SimpleGraph::from_rows(std::move(out));
}

}  // namespace detail

/// Visits every labeled realization of s (vertex i has degree s[i]) exactly
/// once. The visitor returns false to stop.
template <class Visitor>
void for_each_realization(const DegreeSequence& s, Visitor&& visit, const OracleConfig& cfg = {}) {
    detail::check_realizable(s, cfg);
    auto on_row = [](std::span<const VertexMask>, std::span<const int>, int) {
        return SearchStep::proceed;
    };
    auto on_leaf = [&](std::span<const VertexMask> rows) {
        return static_cast<bool>(visit(SimpleGraph::from_rows({rows.begin(), rows.end()})));
    };
    detail::RealizationWalker walker(std::vector<int>(s.begin(), s.end()), on_row, on_leaf);
    walker.run();
}

inline std::vector<SimpleGraph> enumerate_realizations(const DegreeSequence& s,
                                                       const OracleConfig& cfg = {}) {
    std::vector<SimpleGraph> out;
    for_each_realization(
        s,
        [&](SimpleGraph g) {
            out.push_back(std::move(g));
            return true;
        },
        cfg);
    return out;
}

/// Every labeled graph reachable from g0 by 2-switches (breadth first).
inline std::set<SimpleGraph> two_switch_closure(const SimpleGraph& g0, const OracleConfig& cfg = {}) {
    detail::check_cap(g0.order(), cfg);
    std::set<SimpleGraph> seen{g0};
    std::deque<SimpleGraph> frontier{g0};
    while (!frontier.empty()) {
        SimpleGraph g = std::move(frontier.front());
        frontier.pop_front();
        auto edges = g.edges();
        for (std::size_t i = 0; i < edges.size(); ++i) {
            for (std::size_t j = i + 1; j < edges.size(); ++j) {
                auto [a, b] = edges[i];
                auto [c, d] = edges[j];
                if (a == c || a == d || b == c || b == d)
                    continue;
                // ab, cd -> ac, bd   and   ab, dc -> ad, bc
                for (auto [p, q] : {std::pair{c, d}, std::pair{d, c}}) {
                    if (g.has_edge(a, p) || g.has_edge(b, q))
                        continue;
                    auto next = two_switch(g, {a, b}, {p, q});
                    if (seen.insert(next).second)
                        frontier.push_back(std::move(next));
                }
            }
        }
    }
    return seen;
}

enum class Verdict { yes, no };

struct Witness {
    SimpleGraph graph;
    Embedding embedding;
};

struct PotentialVerdict {
    Verdict kind = Verdict::no;
    std::optional<Witness> witness;
    // complete realizations visited, the witness included; for NO this is
    // every realization of S
    long realizations_examined = 0;
};

/// Exhaustive decision: does some realization of s contain h?
///
/// A branch whose partial graph already contains h is completed by
/// Havel-Hakimi and returned; NO is only reported after every realization
/// has been visited.
inline PotentialVerdict is_potentially(const DegreeSequence& s, const Pattern& h,
                                       const OracleConfig& cfg = {}) {
    detail::check_realizable(s, cfg);
    PatternMatcher matcher(h);
    PotentialVerdict verdict;

    std::vector<VertexMask> empty(static_cast<std::size_t>(s.size()), 0);
    if (matcher.contained_in(empty)) {
        auto g = havel_hakimi_realize(s);
        verdict.kind = Verdict::yes;
        verdict.witness = Witness{g, *contains_pattern(g, h)};
        verdict.realizations_examined = 1;
        return verdict;
    }

    auto on_row = [&](std::span<const VertexMask> rows, std::span<const int> residual, int) {
        if (!matcher.contained_in(rows))
            return SearchStep::proceed;
        auto g = detail::complete_partial(rows, residual);
        verdict.kind = Verdict::yes;
        verdict.witness = Witness{g, *contains_pattern(g, h)};
        ++verdict.realizations_examined;
        return SearchStep::stop;
    };
    auto on_leaf = [&](std::span<const VertexMask>) {
        ++verdict.realizations_examined;
        return true;
    };
    detail::RealizationWalker walker(std::vector<int>(s.begin(), s.end()), on_row, on_leaf);
    walker.run();
    return verdict;
}

/// True iff every realization of s contains h.
inline bool is_forcibly(const DegreeSequence& s, const Pattern& h, const OracleConfig& cfg = {}) {
    detail::check_realizable(s, cfg);
    PatternMatcher matcher(h);
    std::vector<VertexMask> empty(static_cast<std::size_t>(s.size()), 0);
    if (matcher.contained_in(empty))
        return true;
    bool found_free = false;
    // a partial graph containing h forces h in every completion
    auto on_row = [&](std::span<const VertexMask> rows, std::span<const int>, int) {
        return matcher.contained_in(rows) ? SearchStep::prune : SearchStep::proceed;
    };
    auto on_leaf = [&](std::span<const VertexMask>) {
        found_free = true;
        return false;
    };
    detail::RealizationWalker walker(std::vector<int>(s.begin(), s.end()), on_row, on_leaf);
    walker.run();
    return !found_free;
}

struct ThresholdReport {
    Pattern pattern;
    int n = 0;
    long computed_sigma = 0;
    std::vector<DegreeSequence> extremal_sequences;
    std::optional<long> formula_sigma;
    bool agrees = true;
    long sequences_examined = 0;
    long realizations_examined = 0;
    std::int64_t elapsed_ms = 0;
    // every graphical sequence of length n is potentially H; computed_sigma is
    // then the least sigma attained (0)
    bool all_potential = false;
};

namespace detail {

// Evaluates `decide` on every sequence, spreading the work over `workers` threads.
// Result order matches input order.
template <class Decide>
auto parallel_map(const std::vector<DegreeSequence>& items, int workers, Decide decide) {
    using Result = decltype(decide(items.front()));
    std::vector<std::optional<Result>> results(items.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= items.size())
                return;
            try {
                results[i] = decide(items[i]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(items.size());
            }
        }
    };
    int count = std::max(1, std::min<int>(workers, static_cast<int>(items.size())));
    if (count == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < count; ++t)
            pool.emplace_back(work);
    }
    if (failure)
        std::rethrow_exception(failure);
    std::vector<Result> out;
    out.reserve(items.size());
    for (auto& r : results)
        out.push_back(std::move(*r));
    return out;
}

}  // namespace detail

/// Exact sigma(H, n) by exhaustion.
///
/// Sigma levels are scanned from n(n-1) downwards; the first level holding a
/// sequence that is not potentially H fixes the answer (that sigma + 2), and
/// every such sequence at that level is reported as extremal.
inline ThresholdReport sigma_threshold(const Pattern& h, int n, const OracleConfig& cfg = {}) {
    auto start = std::chrono::steady_clock::now();
    detail::check_cap(n, cfg);
    if (h.order() > n)
        throw NoThresholdError("pattern on " + std::to_string(h.order()) +
                               " vertices does not fit in K_" + std::to_string(n));
    ThresholdReport report;
    report.pattern = h;
    report.n = n;
    if (h.kind == PatternKind::k4_minus_e && n >= 4)
        report.formula_sigma = theorem_formula(n);

    bool found = false;
    for (long level = static_cast<long>(n) * (n - 1); level >= 0 && !found; level -= 2) {
        auto sequences = graphical_sequences(n, level, level);
        if (sequences.empty())
            continue;
        auto verdicts = detail::parallel_map(sequences, cfg.workers, [&](const DegreeSequence& s) {
            auto v = is_potentially(s, h, cfg);
            return std::pair{v.kind, v.realizations_examined};
        });
        report.sequences_examined += static_cast<long>(sequences.size());
        for (std::size_t i = 0; i < sequences.size(); ++i) {
            report.realizations_examined += verdicts[i].second;
            if (verdicts[i].first == Verdict::no) {
                found = true;
                report.extremal_sequences.push_back(sequences[i]);
            }
        }
        if (found)
            report.computed_sigma = level + 2;
    }
    if (!found) {
        report.all_potential = true;
        report.computed_sigma = 0;
    }
    if (report.formula_sigma)
        report.agrees = *report.formula_sigma == report.computed_sigma;
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
}

/// Maximum edge count of an n-vertex graph with no copy of h (n <= 8).
///
/// Branch and bound over vertex pairs in lexicographic order; an edge is only
/// added when no copy of h passes through it.
inline int ex_number(int n, const Pattern& h) {
    if (n > kExtremalMaxOrder)
        throw SizeLimitError("ex_number supports n <= " + std::to_string(kExtremalMaxOrder));
    if (n < 0)
        throw DomainError("negative order");
    PatternMatcher matcher(h);
    std::vector<Edge> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            pairs.push_back({a, b});
    std::vector<VertexMask> rows(static_cast<std::size_t>(n), 0);
    if (matcher.contained_in(rows))
        throw DomainError("pattern without edges is contained in every graph on " +
                          std::to_string(n) + " vertices");

    int best = 0;
    int total = static_cast<int>(pairs.size());
    auto dfs = [&](auto&& self, int idx, int edges) -> void {
        best = std::max(best, edges);
        if (idx == total || edges + (total - idx) <= best)
            return;
        auto [a, b] = pairs[idx];
        rows[a] |= VertexMask{1} << b;
        rows[b] |= VertexMask{1} << a;
        if (!matcher.find_through_edge(rows, a, b))
            self(self, idx + 1, edges + 1);
        rows[a] &= ~(VertexMask{1} << b);
        rows[b] &= ~(VertexMask{1} << a);
        self(self, idx + 1, edges);
    };
    dfs(dfs, 0, 0);
    return best;
}

/// Least even m such that every graphical n-sequence with sigma >= m is
/// forcibly h, found by scanning sigma levels downwards (n <= 8).
inline long forcible_threshold(const Pattern& h, int n, const OracleConfig& cfg = {}) {
    if (n > kExtremalMaxOrder)
        throw SizeLimitError("forcible_threshold supports n <= " + std::to_string(kExtremalMaxOrder));
    OracleConfig local = cfg;
    local.cap = std::max(cfg.cap, n);
    for (long level = static_cast<long>(n) * (n - 1); level >= 0; level -= 2) {
        auto sequences = graphical_sequences(n, level, level);
        auto forced = detail::parallel_map(sequences, cfg.workers, [&](const DegreeSequence& s) {
            return is_forcibly(s, h, local);
        });
        if (std::find(forced.begin(), forced.end(), false) != forced.end())
            return level + 2;
    }
    return 0;
}

}  // namespace potsig
