#include <gtest/gtest.h>

#include <random>

#include "brute_force.hpp"
#include "potsig/potsig.hpp"

using namespace potsig;

namespace {

// all non-increasing sequences of length n with terms in [0, n-1]
void each_sequence(int n, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int cap) {
        if (static_cast<int>(cur.size()) == n) {
            fn(cur);
            return;
        }
        for (int v = cap; v >= 0; --v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(n - 1);
}

}  // namespace

TEST(Sequences, Sigma) {
    EXPECT_EQ(sigma(constant_sequence(3, 6)), 18);
    EXPECT_EQ(sigma(DegreeSequence{}), 0);
    EXPECT_EQ(sigma(DegreeSequence({4, 3, 3, 3, 3, 3, 1})), 20);
}

TEST(Sequences, ConstructorRejectsBadTerms) {
    EXPECT_THROW(DegreeSequence({1, 2}), InvalidSequenceError);
    EXPECT_THROW(DegreeSequence({2, -1}), InvalidSequenceError);
}

TEST(Sequences, GraphicalExamples) {
    EXPECT_TRUE(is_graphical(DegreeSequence({3, 3, 3, 3})));
    EXPECT_FALSE(is_graphical(DegreeSequence({3, 1})));
    EXPECT_TRUE(is_graphical(DegreeSequence({4, 4, 4, 4, 4, 4, 4, 0})));
    EXPECT_FALSE(is_graphical(DegreeSequence({3, 3, 1, 1})));
    EXPECT_TRUE(is_graphical(DegreeSequence{}));
    EXPECT_FALSE(is_graphical(DegreeSequence({3, 3, 3})));
}

TEST(Sequences, ErdosGallaiMatchesBruteForce) {
    for (int n = 1; n <= 7; ++n) {
        auto attained = brute::attained_sequences(n);
        int graphical = 0;
        each_sequence(n, [&](const std::vector<int>& v) {
            bool expected = attained.count(v) > 0;
            EXPECT_EQ(is_graphical(DegreeSequence(v)), expected) << to_plain(DegreeSequence(v));
            graphical += expected;
        });
        EXPECT_EQ(graphical, static_cast<int>(attained.size()));
    }
    // terms beyond n - 1 are never graphical
    EXPECT_FALSE(is_graphical(DegreeSequence({4, 1, 1, 1})));
}

TEST(Sequences, HavelHakimiExamples) {
    EXPECT_EQ(havel_hakimi_realize(DegreeSequence({2, 2, 2})), complete_graph(3));
    auto g = havel_hakimi_realize(constant_sequence(3, 6));
    EXPECT_EQ(degree_sequence(g), constant_sequence(3, 6));
    SimpleGraph prism(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
    EXPECT_TRUE(isomorphic(g, complete_bipartite(3, 3)) || isomorphic(g, prism));
    EXPECT_THROW(havel_hakimi_realize(DegreeSequence({1, 1, 1})), NotGraphicalError);
}

TEST(Sequences, HavelHakimiRoundTrip) {
    for (int n = 1; n <= 10; ++n)
        for (const auto& s : graphical_sequences(n, 0, static_cast<long>(n) * (n - 1)))
            ASSERT_EQ(degree_sequence(havel_hakimi_realize(s)), s);
}

TEST(Sequences, EnumerationMatchesBruteForce) {
    for (int n = 1; n <= 6; ++n) {
        auto seqs = graphical_sequences(n, 0, static_cast<long>(n) * (n - 1));
        std::set<std::vector<int>> ours;
        for (const auto& s : seqs)
            ours.insert(std::vector<int>(s.begin(), s.end()));
        EXPECT_EQ(ours.size(), seqs.size());
        EXPECT_EQ(ours, brute::attained_sequences(n));
    }
}

TEST(Sequences, EnumerationExamplesAndOrder) {
    auto three = graphical_sequences(3, 0, 6);
    EXPECT_EQ(three, (std::vector<DegreeSequence>{{2, 2, 2}, {2, 1, 1}, {1, 1, 0}, {0, 0, 0}}));
    EXPECT_EQ(graphical_sequences(4, 12, 12), (std::vector<DegreeSequence>{{3, 3, 3, 3}}));
    auto six = graphical_sequences(6, 16, 30);
    for (std::size_t i = 1; i < six.size(); ++i) {
        long a = sigma(six[i - 1]), b = sigma(six[i]);
        EXPECT_TRUE(a > b || (a == b && six[i - 1] < six[i]));
    }
    int visited = 0;
    enumerate_graphical(5, 0, 20, [&](const DegreeSequence&) { return ++visited < 3; });
    EXPECT_EQ(visited, 3);
}

TEST(Sequences, ParseGrammar) {
    EXPECT_EQ(parse_sequence("4,3,3"), DegreeSequence({4, 3, 3}));
    EXPECT_EQ(parse_sequence("4^1,3^5,1^1"), DegreeSequence({4, 3, 3, 3, 3, 3, 1}));
    EXPECT_EQ(parse_sequence("3^6"), constant_sequence(3, 6));
    EXPECT_EQ(parse_sequence("4^7,0^1"), DegreeSequence({4, 4, 4, 4, 4, 4, 4, 0}));
    EXPECT_EQ(parse_sequence("2,2^2"), DegreeSequence({2, 2, 2}));
    for (const char* bad : {"", "3,", ",3", "3^0", "3^", "^3", "a", "1,2", "3^-1", "3 3", "-1"})
        EXPECT_THROW(parse_sequence(bad), Error) << bad;
    EXPECT_EQ(to_compact(parse_sequence("4,3,3,3,3,3,1")), "4^1,3^5,1^1");
    EXPECT_EQ(to_plain(constant_sequence(3, 3)), "3,3,3");
}

TEST(Sequences, DeleteMinVertex) {
    auto r = delete_min_vertex_sequence(DegreeSequence({2, 2, 2}), complete_graph(3));
    EXPECT_EQ(r.sequence, DegreeSequence({1, 1}));
    EXPECT_EQ(r.record.positions, (std::vector<int>{0, 1}));
    auto f1 = fixture_f1();
    auto r2 = delete_min_vertex_sequence(degree_sequence(f1), f1);
    EXPECT_EQ(r2.sequence, DegreeSequence({4, 3, 3, 3, 3, 2}));
    EXPECT_THROW(delete_min_vertex_sequence(DegreeSequence({3, 3, 3, 3}), complete_graph(3)),
                 PreconditionError);
}

TEST(Sequences, ReattachRebuildsTriangle) {
    SimpleGraph k2(2, {{0, 1}});
    auto g = reattach(k2, DecrementRecord{{0, 1}, 2});
    EXPECT_EQ(g, complete_graph(3));
    EXPECT_THROW(reattach(k2, DecrementRecord{{0}, 2}), ReattachmentError);
    EXPECT_THROW(reattach(k2, DecrementRecord{{0, 0}, 2}), ReattachmentError);
    EXPECT_THROW(reattach(k2, DecrementRecord{{0, 2}, 2}), ReattachmentError);
}

TEST(Sequences, ReattachRoundTripOnRandomRealizations) {
    std::mt19937 rng(123);
    for (int n = 2; n <= 9; ++n) {
        auto seqs = graphical_sequences(n, 0, static_cast<long>(n) * (n - 1));
        std::uniform_int_distribution<std::size_t> pick(0, seqs.size() - 1);
        for (int trial = 0; trial < 40; ++trial) {
            const auto& s = seqs[pick(rng)];
            auto g = havel_hakimi_realize(s);
            std::vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            g = permute(g, perm);
            auto red = delete_min_vertex_sequence(s, g);
            // any realization of S' will do; take a fresh one
            auto g1 = havel_hakimi_realize(red.sequence);
            auto back = reattach(g1, red.record);
            ASSERT_EQ(degree_sequence(back), s) << to_plain(s);
            // and the graph actually reduced
            ASSERT_EQ(degree_sequence(reattach(red.graph, red.record)), s);
        }
    }
}

TEST(Sequences, ReattachKeepsEmbeddings) {
    auto g1 = disjoint_union(complete_graph(4), empty_graph(2));
    auto before = contains_pattern(g1, k4_minus_e());
    ASSERT_TRUE(before);
    auto g = reattach(g1, DecrementRecord{{0, 4}, 2});
    EXPECT_TRUE(is_valid_embedding(g, k4_minus_e(), *before));
}
