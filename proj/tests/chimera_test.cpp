#include <gtest/gtest.h>

#include "coising/catalog.hpp"
#include "coising/chimera.hpp"
#include "coising/isomorphism.hpp"

using namespace coising;

TEST(Chimera, SingleCellIsK44) {
    auto c1 = chimera_graph(1);
    EXPECT_EQ(c1.num_qubits(), 8);
    EXPECT_EQ(c1.num_couplers(), 16u);
    // bipartite: couplers only between the left and right four
    for (int q = 0; q < 8; ++q)
        for (int p : c1.adjacency[(std::size_t)q]) EXPECT_NE(q < 4, p < 4);
}

TEST(Chimera, CouplerCountFormula) {
    for (int m : {1, 2, 3, 16}) {
        auto topo = chimera_graph(m);
        EXPECT_EQ(topo.num_qubits(), 8 * m * m);
        EXPECT_EQ((int)topo.num_couplers(), 16 * m * m + 8 * m * (m - 1)) << "m=" << m;
    }
    auto c2 = chimera_graph(2);
    EXPECT_EQ(c2.num_qubits(), 32);
    EXPECT_EQ(c2.num_couplers(), 80u);
}

TEST(Chimera, DegreesAreAtMostSixAndExactlySixInside) {
    auto c3 = chimera_graph(3);
    for (int q = 0; q < c3.num_qubits(); ++q) EXPECT_LE(c3.adjacency[(std::size_t)q].size(), 6u);
    // middle cell of a 3x3 grid: all eight qubits have full degree
    for (int unit = 0; unit < 8; ++unit) {
        const int q = 8 * (3 * 1 + 1) + unit;
        EXPECT_EQ(c3.adjacency[(std::size_t)q].size(), 6u) << "unit " << unit;
    }
}

TEST(Embedding, K2IntoOneCellMatchesTheExhaustiveCount) {
    auto c1 = chimera_graph(1);
    Graph k2(2, {{1, 2}});
    // oracle: count ordered injective assignments whose edge lands on a coupler
    int valid = 0;
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b)
            if (a != b && c1.has_coupler(a, b)) ++valid;
    EXPECT_EQ(valid, 32);
    auto found = find_native_embeddings(k2, c1, 10, 123);
    EXPECT_GE(found.embeddings.size(), 2u);
    for (const auto& e : found.embeddings) EXPECT_TRUE(verify_embedding(k2, c1, e));
    // distinct as assignments
    for (std::size_t i = 0; i < found.embeddings.size(); ++i)
        for (std::size_t j = i + 1; j < found.embeddings.size(); ++j)
            EXPECT_NE(found.embeddings[i].assignment, found.embeddings[j].assignment);
}

TEST(Embedding, K5HasNoNativeEmbedding) {
    Graph k5(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}});
    auto found = find_native_embeddings(k5, chimera_graph(2), 1, 7, 10, 2'000'000);
    EXPECT_TRUE(found.embeddings.empty());
    EXPECT_TRUE(found.budget_exhausted);
}

TEST(Embedding, CatalogGraphIntoModerateChimera) {
    auto topo = chimera_graph(8);
    auto found = find_native_embeddings(catalog_get("G13"), topo, 3, 99);
    ASSERT_GE(found.embeddings.size(), 3u);
    for (const auto& e : found.embeddings) EXPECT_TRUE(verify_embedding(catalog_get("G13"), topo, e));
}

TEST(Embedding, VerifyRejectsCorruptAssignments) {
    auto topo = chimera_graph(4);
    const Graph& g = catalog_get("G13");
    auto found = find_native_embeddings(g, topo, 1, 5);
    ASSERT_FALSE(found.embeddings.empty());
    auto good = found.embeddings.front();
    EXPECT_TRUE(verify_embedding(g, topo, good));

    auto swapped = good;
    // move one vertex to a qubit that breaks at least one edge
    for (int q = 0; q < topo.num_qubits(); ++q) {
        bool in_use = false;
        for (const auto& [v, qq] : good.assignment) in_use |= (qq == q);
        if (in_use) continue;
        swapped.assignment[1] = q;
        if (!verify_embedding(g, topo, swapped)) break;
    }
    EXPECT_FALSE(verify_embedding(g, topo, swapped));

    auto collide = good;
    collide.assignment[2] = collide.assignment[1];
    EXPECT_FALSE(verify_embedding(g, topo, collide));
}

TEST(Embedding, ComposesWithRelabeling) {
    auto topo = chimera_graph(4);
    const Graph& g = catalog_get("G13");
    auto found = find_native_embeddings(g, topo, 1, 31);
    ASSERT_FALSE(found.embeddings.empty());
    Rng rng(8);
    auto perm = VertexPermutation::random(g.n(), rng);
    auto relabeled = relabel(g, perm);
    EmbeddingMap composed;
    for (const auto& [v, q] : found.embeddings.front().assignment) composed.assignment[perm(v)] = q;
    EXPECT_TRUE(verify_embedding(relabeled, topo, composed));
}

TEST(Embedding, DeterministicForFixedSeed) {
    auto topo = chimera_graph(6);
    auto a = find_native_embeddings(catalog_get("G17"), topo, 2, 444);
    auto b = find_native_embeddings(catalog_get("G17"), topo, 2, 444);
    ASSERT_EQ(a.embeddings.size(), b.embeddings.size());
    for (std::size_t i = 0; i < a.embeddings.size(); ++i)
        EXPECT_EQ(a.embeddings[i].assignment, b.embeddings[i].assignment);
}
