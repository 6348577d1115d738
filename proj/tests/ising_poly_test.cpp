#include <gtest/gtest.h>

#include "coising/catalog.hpp"
#include "coising/co_trees.hpp"
#include "coising/decompose.hpp"
#include "coising/isomorphism.hpp"
#include "coising/spectrum.hpp"
#include "oracles.hpp"

using namespace coising;

namespace {

IsingPolynomial from_hist(int n, const std::map<std::pair<int, int>, std::uint64_t>& hist) {
    IsingPolynomial::Terms terms;
    for (const auto& [key, count] : hist) terms[key] = count;
    return IsingPolynomial(n, std::move(terms));
}

} // namespace

TEST(ClassicalSpectrum, K2ByHand) {
    auto p = classical_spectrum(Graph(2, {{1, 2}}));
    EXPECT_EQ(p.count(1, 2), 1);
    EXPECT_EQ(p.count(-1, 0), 2);
    EXPECT_EQ(p.count(1, -2), 1);
    EXPECT_EQ(p.total(), 4);
}

TEST(ClassicalSpectrum, SingleVertex) {
    auto p = classical_spectrum(Graph(1, {}));
    EXPECT_EQ(p.count(0, 1), 1);
    EXPECT_EQ(p.count(0, -1), 1);
}

TEST(ClassicalSpectrum, MatchesBruteForceOnRandomGraphs) {
    Rng rng(101);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + (int)rng.below(9);
        auto g = oracles::random_graph(n, 0.4, rng);
        EXPECT_EQ(classical_spectrum(g), from_hist(n, oracles::brute_spectrum(g))) << "trial " << trial;
    }
}

TEST(ClassicalSpectrum, OverCapRefersToAuto) {
    try {
        classical_spectrum(catalog_get("G33"));
        FAIL() << "expected resource_error";
    } catch (const resource_error& e) {
        EXPECT_NE(std::string(e.what()).find("classical_spectrum_auto"), std::string::npos);
    }
}

TEST(ClassicalSpectrum, G13AndG13pShareTheFullPolynomial) {
    EXPECT_EQ(classical_spectrum(catalog_get("G13")), classical_spectrum(catalog_get("G13p")));
}

TEST(RootedSpectrum, K2AndSingleVertex) {
    auto r = rooted_spectrum(RootedGraph(Graph(2, {{1, 2}}), 1));
    EXPECT_EQ(r.count(1, 2), 1);
    EXPECT_EQ(r.count(-1, 0), 1);
    EXPECT_EQ(r.total(), 2);
    auto v = rooted_spectrum(RootedGraph(Graph(1, {}), 1));
    EXPECT_EQ(v.count(0, 1), 1);
    EXPECT_EQ(v.total(), 1);
}

TEST(RootedSpectrum, MatchesBruteForce) {
    Rng rng(102);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 2 + (int)rng.below(7);
        auto g = oracles::random_graph(n, 0.5, rng);
        const int root = 1 + (int)rng.below((std::uint64_t)n);
        EXPECT_EQ(rooted_spectrum(RootedGraph(g, root)),
                  from_hist(n, oracles::brute_rooted_spectrum(g, root)));
    }
}

TEST(RootedSpectrum, SplitsTheFullPolynomial) {
    // Z(G,x,y) = Z(G,v,x,y) + Z(G,v,x,1/y) over seeded random graphs.
    Rng rng(103);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + (int)rng.below(12);
        auto g = oracles::random_graph(n, 0.35, rng);
        const int root = 1 + (int)rng.below((std::uint64_t)n);
        auto rooted = rooted_spectrum(RootedGraph(g, root));
        IsingPolynomial sum = rooted;
        sum += rooted.reflect_m();
        EXPECT_EQ(sum, classical_spectrum(g)) << "trial " << trial;
    }
}

TEST(ComposeRooted, TwoK2sGiveTheCenterRootedPath) {
    auto k2 = rooted_spectrum(RootedGraph(Graph(2, {{1, 2}}), 1));
    auto composed = compose_rooted(k2, k2);
    EXPECT_EQ(composed.count(2, 3), 1);
    EXPECT_EQ(composed.count(0, 1), 2);
    EXPECT_EQ(composed.count(-2, -1), 1);
    EXPECT_EQ(composed.n(), 3);
    auto path_center = rooted_spectrum(RootedGraph(Graph(3, {{1, 2}, {2, 3}}), 2));
    EXPECT_EQ(composed, path_center);
}

TEST(ComposeRooted, SingleVertexIsIdentity) {
    auto unit = rooted_spectrum(RootedGraph(Graph(1, {}), 1));
    auto p = rooted_spectrum(RootedGraph(catalog_get("G13"), 4));
    EXPECT_EQ(compose_rooted(p, unit), p);
}

TEST(ComposeRooted, CompositionLawOverRandomPairs) {
    Rng rng(104);
    for (int trial = 0; trial < 200; ++trial) {
        const int n1 = 1 + (int)rng.below(8), n2 = 1 + (int)rng.below(8);
        RootedGraph a(oracles::random_graph(n1, 0.45, rng), 1 + (int)rng.below((std::uint64_t)n1));
        RootedGraph b(oracles::random_graph(n2, 0.45, rng), 1 + (int)rng.below((std::uint64_t)n2));
        EXPECT_EQ(compose_rooted(rooted_spectrum(a), rooted_spectrum(b)),
                  rooted_spectrum(vertex_identify(a, b)))
            << "trial " << trial;
    }
}

TEST(VertexIdentify, BasicShapes) {
    RootedGraph k2(Graph(2, {{1, 2}}), 1);
    auto path = vertex_identify(k2, k2);
    EXPECT_EQ(path.graph.n(), 3);
    EXPECT_EQ(path.graph.edge_count(), 2u);
    EXPECT_EQ(path.root, 1);
    EXPECT_EQ(path.graph.degrees()[0], 2); // merge vertex

    auto star3 = vertex_identify(vertex_identify(k2, k2), k2);
    EXPECT_EQ(star3.graph.n(), 4);
    EXPECT_EQ(star3.graph.degrees()[0], 3); // cut vertex of degree 3

    RootedGraph unit(Graph(1, {}), 1);
    auto same = vertex_identify(RootedGraph(catalog_get("G13"), 2), unit);
    EXPECT_EQ(same.graph, catalog_get("G13"));
}

TEST(SpectrumAuto, AgreesWithDirectEnumeration) {
    EXPECT_EQ(classical_spectrum_auto(catalog_get("G13")), classical_spectrum(catalog_get("G13")));
    Rng rng(105);
    for (int trial = 0; trial < 30; ++trial) {
        const int n1 = 2 + (int)rng.below(7), n2 = 2 + (int)rng.below(7);
        auto g = oracles::random_cut_graph(n1, n2, rng);
        EXPECT_EQ(classical_spectrum_auto(g), classical_spectrum(g)) << "trial " << trial;
    }
}

TEST(SpectrumAuto, EdgelessGraphIsBinomial) {
    const int n = 9;
    auto p = classical_spectrum_auto(Graph(n, {}));
    BigCount binom = 1;
    for (int k = 0; k <= n; ++k) {
        EXPECT_EQ(p.count(0, n - 2 * k), binom) << "k=" << k;
        binom = binom * (n - k) / (k + 1);
    }
}

TEST(SpectrumAuto, DisconnectedComponentsMultiply) {
    // two K2s and an isolated vertex
    Graph g(5, {{1, 2}, {3, 4}});
    auto expect = from_hist(5, oracles::brute_spectrum(g));
    EXPECT_EQ(classical_spectrum_auto(g), expect);
}

TEST(SpectrumAuto, OversizedBlockNamesItsSize) {
    // a 30-cycle is one biconnected component, beyond the enumeration cap
    std::vector<Edge> cycle;
    for (int v = 1; v <= 30; ++v) cycle.emplace_back(v, v % 30 + 1);
    try {
        classical_spectrum_auto(Graph(30, std::move(cycle)));
        FAIL() << "expected resource_error";
    } catch (const resource_error& e) {
        EXPECT_NE(std::string(e.what()).find("30"), std::string::npos);
    }
}

TEST(SpectrumAuto, G33FamilyTotalsAreExact) {
    auto p = classical_spectrum_auto(catalog_get("G33"));
    EXPECT_EQ(p.total(), BigCount(1) << 33);
    // flip symmetry of the full polynomial
    for (const auto& [key, count] : p.terms()) EXPECT_EQ(count, p.count(key.first, -key.second));
}

TEST(CoIsing, PaperTuplesAndControls) {
    EXPECT_TRUE(co_ising(catalog_get("G17"), catalog_get("G17p")));
    EXPECT_TRUE(co_ising(catalog_get("G25p2"), catalog_get("G25p4")));
    // same vertex count, different edge counts -> trivially different
    Graph k2_padded(13, {{1, 2}});
    EXPECT_FALSE(co_ising(catalog_get("G13"), k2_padded));
    Rng rng(106);
    auto g = catalog_get("G17");
    EXPECT_TRUE(co_ising(g, relabel(g, VertexPermutation::random(17, rng))));
}

TEST(CoIsing, PublishedG33p2VariantBreaksTheTuple) {
    // The variant keeps gadget-interior edges (5,8),(5,9) and hangs the hub
    // there; its rooted gadget polynomial differs, so it is not co-spectral
    // with the tuple. The catalog's G33p2 restores the pattern.
    Graph gadget(9, {{1, 6}, {1, 7}, {2, 6}, {3, 7}, {4, 8}, {4, 9}, {5, 8}, {5, 9}, {6, 9}});
    EXPECT_NE(rooted_spectrum(RootedGraph(gadget, 2)), rooted_spectrum(RootedGraph(gadget, 5)));
    EXPECT_FALSE(co_ising(catalog_get("G33p2_variant"), catalog_get("G33")));
    EXPECT_TRUE(co_ising(catalog_get("G33p2"), catalog_get("G33")));
    EXPECT_FALSE(are_isomorphic(catalog_get("G33p2"), catalog_get("G33p2_variant")));
}

TEST(PolynomialJson, RoundTrip) {
    auto p = classical_spectrum_auto(catalog_get("G17"));
    auto doc = polynomial_to_json(p);
    EXPECT_EQ(doc["total"].get<std::string>(), "131072");
    EXPECT_EQ(polynomial_from_json(nlohmann::json::parse(doc.dump())), p);
}

TEST(CoRootedTrees, NothingBelowFourVertices) {
    EXPECT_TRUE(find_co_rooted_trees(3).empty());
}

TEST(CoRootedTrees, FreeTreeCountsAreStandard) {
    const int expected[] = {1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
    for (int n = 1; n <= 10; ++n) EXPECT_EQ((int)free_trees(n).size(), expected[n - 1]) << "n=" << n;
}

TEST(CoRootedTrees, ExhaustivelyEmptyUpToTwelveVertices) {
    // Frozen exhaustive result: the rooted Ising polynomial separates every
    // rooted tree with at most 12 vertices. Tree-like pairs need a cycle.
    EXPECT_TRUE(find_co_rooted_trees(12).empty());
    EXPECT_THROW(find_co_rooted_trees(13), std::invalid_argument);
}

TEST(CoRootedPairs, KnownGadgetPairSharesTheRootedPolynomial) {
    // The 9-vertex unicyclic pair the larger catalog tuples are built from.
    Graph a9(9, {{1, 6}, {1, 7}, {3, 7}, {4, 8}, {4, 9}, {5, 8}, {5, 9}, {6, 9}, {2, 6}});
    Graph b9(9, {{1, 7}, {1, 9}, {2, 6}, {2, 8}, {3, 7}, {3, 9}, {4, 8}, {4, 9}, {5, 1}});
    RootedGraph ra(a9, 2), rb(b9, 5);
    ASSERT_EQ(rooted_spectrum(ra), rooted_spectrum(rb));
    EXPECT_FALSE(are_isomorphic(a9, b9));
    // composing both with any common partner yields co-Ising composites
    RootedGraph partner(Graph(3, {{1, 2}, {1, 3}}), 1);
    auto c1 = vertex_identify(ra, partner);
    auto c2 = vertex_identify(rb, partner);
    EXPECT_TRUE(co_ising(c1.graph, c2.graph));
    EXPECT_FALSE(are_isomorphic(c1.graph, c2.graph));
}
