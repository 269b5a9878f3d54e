#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "itlab/dense_graph.hpp"
#include "itlab/error.hpp"
#include "itlab/eta.hpp"
#include "itlab/serialize.hpp"
#include "itlab/structure.hpp"
#include "oracles.hpp"

using namespace itlab;

namespace {

EtaRules only(bool exact, bool degree, bool density, bool components, bool game) {
    return EtaRules{exact, degree, density, components, game};
}

Graph with_edges(Vertex n, std::vector<Edge> edges) { return Graph::from_edges(n, edges); }

} // namespace

TEST(Eta, EmptyGraphIsZero) {
    auto b = eta_lower_bound(Graph(0));
    EXPECT_EQ(b.value, EtaValue(0));
    EXPECT_EQ(b.trace->rule, EtaRule::Empty);
}

TEST(Eta, IsolatedVertexIsInfinite) {
    auto b = eta_lower_bound(with_edges(3, {{0, 1}}));
    EXPECT_TRUE(b.value.is_infinite());
    EXPECT_EQ(b.trace->rule, EtaRule::IsolatedVertex);
    EXPECT_TRUE(eta_lower_bound(Graph(1)).value.is_infinite());
}

TEST(Eta, InfinityArithmetic) {
    EXPECT_EQ(EtaValue::infinity() + EtaValue(1), EtaValue::infinity());
    EXPECT_LT(EtaValue(5), EtaValue::infinity());
    EXPECT_EQ(EtaValue::infinity().str(), "inf");
}

TEST(Eta, K33IsOne) {
    auto g = oracle::kdd_union(3, 1);
    EXPECT_EQ(eta_lower_bound(g).value, EtaValue(1));
    EXPECT_EQ(eta_lower_bound(g, {}, only(false, true, false, false, false)).value, EtaValue(1));
    EXPECT_EQ(eta_lower_bound(g, {}, only(false, false, true, false, false)).value, EtaValue(1));
    EXPECT_EQ(degree_rule_bound(6, 3), 1);
    EXPECT_EQ(density_rule_bound(6, 9, 3), 1);
}

TEST(Eta, KddExactOneViaCompleteCut) {
    for (int d = 1; d <= 4; ++d) {
        auto b = eta_lower_bound(oracle::kdd_union(d, 1));
        EXPECT_EQ(b.value, EtaValue(1)) << d;
        EXPECT_EQ(b.trace->rule, EtaRule::ExactAtMostOne) << d;
        EXPECT_TRUE(b.complete);
    }
}

TEST(Eta, KddUnionTightness) {
    for (int d = 1; d <= 3; ++d)
        for (int k = 1; k <= 3; ++k) {
            auto g = oracle::kdd_union(d, k);
            auto n = static_cast<std::size_t>(2 * d * k);
            auto m = static_cast<std::size_t>(d * d * k);
            EXPECT_EQ(eta_lower_bound(g).value, EtaValue(k));
            // components with the degree rule on each
            EXPECT_EQ(eta_lower_bound(g, {}, only(false, true, false, true, false)).value, EtaValue(k));
            // density rule on the whole graph
            EXPECT_EQ(density_rule_bound(n, m, static_cast<std::size_t>(d)), k);
            EXPECT_EQ(eta_lower_bound(g, {}, only(false, false, true, false, false)).value, EtaValue(k));
        }
}

TEST(Eta, ThreeK22TraceUsesComponents) {
    auto b = eta_lower_bound(oracle::kdd_union(2, 3));
    EXPECT_EQ(b.value, EtaValue(3));
    EXPECT_EQ(b.trace->rule, EtaRule::ComponentSum);
    EXPECT_EQ(b.trace->children.size(), 3u);
}

TEST(Eta, C5ViaGame) {
    auto b = eta_lower_bound(oracle::cycle(5), EtaLimits{12, 10'000, std::nullopt, 64}, only(false, false, false, true, true));
    EXPECT_EQ(b.value, EtaValue(2));
    EXPECT_EQ(b.trace->rule, EtaRule::GameStep);
    EXPECT_LE(b.nodes, 10'000u);
    auto replayed = resolve_trace(oracle::cycle(5), *b.trace);
    ASSERT_TRUE(replayed);
    EXPECT_EQ(replayed->value, EtaValue(2));
    EXPECT_EQ(dense_check(oracle::cycle(5), 1), -1);
}

TEST(Eta, DefaultC5) { EXPECT_EQ(eta_lower_bound(oracle::cycle(5)).value, EtaValue(2)); }

TEST(Eta, AtMostOneExamples) {
    EXPECT_TRUE(eta_at_most_one(oracle::path(3)));
    EXPECT_FALSE(eta_at_most_one(oracle::cycle(5)));
    for (int d = 1; d <= 4; ++d) EXPECT_TRUE(eta_at_most_one(oracle::kdd_union(d, 1)));
    EXPECT_THROW(eta_at_most_one(Graph(0)), PreconditionError);
    EXPECT_THROW(eta_at_most_one(with_edges(3, {{0, 1}})), PreconditionError);
}

TEST(Eta, RecognizeKddUnion) {
    EXPECT_TRUE(recognize_kdd_union(oracle::kdd_union(2, 2), 2, 2));
    EXPECT_FALSE(recognize_kdd_union(oracle::kdd_union(2, 2), 2, 1));
    EXPECT_FALSE(recognize_kdd_union(oracle::kdd_union(2, 2), 1, 2));
    auto edges = oracle::kdd_union(2, 2).edges();
    edges.push_back({0, 4});
    EXPECT_FALSE(recognize_kdd_union(Graph::from_edges(8, edges), 2, 2));
    EXPECT_FALSE(recognize_kdd_union(oracle::cycle(6), 2, 1));
    EXPECT_TRUE(recognize_kdd_union(oracle::cycle(4), 2, 1));
    EXPECT_TRUE(recognize_kdd_union(oracle::kdd_union(3, 3), 3, 3));
}

// Exact values η(C_n) = ⌊(n+1)/3⌋ (independence complexes of cycles are
// spheres or wedges of two spheres). The engine must never exceed them.
TEST(Eta, NeverExceedsKnownCycleValues) {
    for (int n = 4; n <= 10; ++n) {
        auto b = eta_lower_bound(oracle::cycle(n), EtaLimits{8, 50'000, std::nullopt, 64});
        EXPECT_LE(b.value, EtaValue((n + 1) / 3)) << n;
        EXPECT_GE(b.value, EtaValue((n + 3) / 4)) << n; // degree rule
    }
}

// Every graph with a complete cut has η = 1. With the complete-cut detector
// switched off the remaining rules must still never certify 2.
TEST(Eta, SoundOnAllCompleteCutGraphs) {
    std::size_t checked = 0;
    for (int n = 2; n <= 8; ++n)
        for (const auto& sg : oracle::graphs_up_to_isomorphism(n)) {
            if (sg.complement_connected()) continue;
            auto g = sg.to_graph();
            ASSERT_TRUE(eta_at_most_one(g));
            auto off = eta_lower_bound(g, EtaLimits{6, 5'000, std::nullopt, 64}, only(false, true, true, true, true));
            ASSERT_LE(off.value, EtaValue(1)) << "n=" << n;
            ASSERT_EQ(eta_lower_bound(g).value, EtaValue(1));
            ++checked;
        }
    // graphs on n ≤ 8 vertices whose complement is disconnected
    EXPECT_EQ(checked, 1u + 2 + 5 + 13 + 44 + 191 + 1229);
}

TEST(Eta, DetectorMatchesComplementConnectivity) {
    for (int n = 1; n <= 7; ++n)
        for (const auto& sg : oracle::graphs_up_to_isomorphism(n)) {
            auto g = sg.to_graph();
            bool isolated = false;
            for (Vertex v = 0; v < g.order(); ++v) isolated = isolated || g.degree(v) == 0;
            if (isolated) continue;
            ASSERT_EQ(eta_at_most_one(g), !sg.complement_connected());
        }
}

TEST(Eta, BudgetMonotone) {
    std::mt19937_64 rng(21);
    for (int iter = 0; iter < 60; ++iter) {
        auto g = oracle::random_graph(rng, 6 + iter % 6, 0.35);
        EtaValue prev(0);
        for (std::uint64_t budget : {1ull, 10ull, 100ull, 1'000ull, 10'000ull}) {
            auto b = eta_lower_bound(g, EtaLimits{12, budget, std::nullopt, 64});
            ASSERT_GE(b.value, prev) << "budget " << budget;
            prev = b.value;
        }
    }
}

TEST(Eta, DepthMonotone) {
    std::mt19937_64 rng(22);
    for (int iter = 0; iter < 40; ++iter) {
        auto g = oracle::random_graph(rng, 8, 0.4);
        EtaValue prev(0);
        for (int depth = 0; depth <= 5; ++depth) {
            auto b = eta_lower_bound(g, EtaLimits{depth, 1'000'000, std::nullopt, 64});
            ASSERT_GE(b.value, prev);
            prev = b.value;
        }
    }
}

TEST(Eta, DeterministicTraces) {
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 40; ++iter) {
        auto g = oracle::random_graph(rng, 9, 0.3);
        auto a = eta_lower_bound(g, EtaLimits{6, 3'000, std::nullopt, 64});
        auto b = eta_lower_bound(g, EtaLimits{6, 3'000, std::nullopt, 64});
        auto ra = resolve_trace(g, *a.trace);
        auto rb = resolve_trace(g, *b.trace);
        ASSERT_TRUE(ra && rb);
        EXPECT_EQ(trace_to_json(*ra).dump(), trace_to_json(*rb).dump());
        EXPECT_EQ(a.nodes, b.nodes);
    }
}

TEST(Eta, TracesReplayToTheirValue) {
    std::mt19937_64 rng(24);
    for (int iter = 0; iter < 80; ++iter) {
        auto g = oracle::random_graph(rng, 5 + iter % 7, 0.3 + 0.05 * (iter % 5));
        for (bool memo : {true, false}) {
            auto b = eta_lower_bound(g, EtaLimits{6, 5'000, std::nullopt, memo ? 64u : 0u});
            auto r = resolve_trace(g, *b.trace);
            ASSERT_TRUE(r);
            EXPECT_EQ(r->value, b.value);
        }
    }
}

TEST(Eta, ReplayRejectsForgedValue) {
    auto g = oracle::cycle(5);
    auto b = eta_lower_bound(g);
    auto forged = std::make_shared<EtaTrace>(*b.trace);
    forged->value = EtaValue(3);
    EXPECT_FALSE(resolve_trace(g, *forged));
}

TEST(Eta, GameEdgesUseCallerIds) {
    // relabelled C5: game edges must be edges of the given graph
    auto g = with_edges(5, {{0, 2}, {2, 4}, {4, 1}, {1, 3}, {3, 0}});
    auto b = eta_lower_bound(g, EtaLimits{12, 10'000, std::nullopt, 64}, only(false, false, false, true, true));
    auto r = resolve_trace(g, *b.trace);
    ASSERT_TRUE(r && r->edge);
    EXPECT_TRUE(g.adjacent(r->edge->u, r->edge->v));
}

TEST(Eta, TargetStopsEarly) {
    auto g = oracle::cycle(8);
    auto b = eta_lower_bound(g, EtaLimits{12, 100'000, 2, 64});
    EXPECT_GE(b.value, EtaValue(2));
}

TEST(Eta, CanonicalOrderIsAPermutationRespectingDegrees) {
    std::mt19937_64 rng(25);
    for (int iter = 0; iter < 100; ++iter) {
        DenseGraph g(oracle::random_graph(rng, 9, 0.3));
        auto order = canonical_order(g);
        auto sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (Vertex i = 0; i < 9; ++i) ASSERT_EQ(sorted[static_cast<std::size_t>(i)], i);
        // relabelling preserves the degree sequence
        auto c = g.permuted(order);
        std::vector<std::size_t> da, db;
        for (std::size_t v = 0; v < 9; ++v) da.push_back(g.degree(v)), db.push_back(c.degree(v));
        std::sort(da.begin(), da.end());
        std::sort(db.begin(), db.end());
        EXPECT_EQ(da, db);
    }
}
