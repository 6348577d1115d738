#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "coising/errors.hpp"
#include "coising/graph.hpp"
#include "coising/ising_polynomial.hpp"

namespace coising {

inline constexpr int kEnumerationCap = 28; // 2^28 configurations

struct RootedGraph {
    Graph graph;
    int root = 1; // 1-based

    RootedGraph() = default;
    RootedGraph(Graph g, int r) : graph(std::move(g)), root(r) {
        if (root < 1 || root > graph.n())
            throw std::invalid_argument("RootedGraph: root " + std::to_string(root) + " out of range");
    }

    friend bool operator==(const RootedGraph& a, const RootedGraph& b) = default;
};

namespace detail {

/// Gray-code sweep over the spins of `free_vertices` (0-based), remaining
/// spins held at their initial value. Each step flips one spin and updates
/// (e, m) in O(degree).
inline IsingPolynomial enumerate_spins(const Graph& g, std::vector<int> free_vertices,
                                       std::vector<int> spins) {
    const int k = (int)free_vertices.size();
    if (k > kEnumerationCap)
        throw resource_error("spin enumeration over " + std::to_string(k) + " vertices exceeds the 2^" +
                             std::to_string(kEnumerationCap) + " cap; use classical_spectrum_auto");
    const auto adj = g.adjacency();

    // Low Gray bits flip most often; give them the low-degree vertices.
    std::sort(free_vertices.begin(), free_vertices.end(),
              [&](int a, int b) { return adj[(std::size_t)a].size() < adj[(std::size_t)b].size(); });

    for (int v : free_vertices) spins[(std::size_t)v] = -1;
    long e = 0, m = 0;
    for (auto [i, j] : g.edges()) e += spins[(std::size_t)i - 1] * spins[(std::size_t)j - 1];
    for (int s : spins) m += s;

    const long e_span = (long)g.edge_count();
    const std::size_t m_bins = (std::size_t)g.n() + 1;
    std::vector<std::uint64_t> hist((std::size_t)(2 * e_span + 1) * m_bins, 0);
    auto bump = [&](long ee, long mm) { ++hist[(std::size_t)(ee + e_span) * m_bins + (std::size_t)((mm + g.n()) / 2)]; };

    bump(e, m);
    const std::uint64_t steps = 1ull << k;
    for (std::uint64_t step = 1; step < steps; ++step) {
        const int v = free_vertices[(std::size_t)std::countr_zero(step)];
        const int flipped = -spins[(std::size_t)v];
        spins[(std::size_t)v] = flipped;
        long nbr_sum = 0;
        for (int u : adj[(std::size_t)v]) nbr_sum += spins[(std::size_t)u];
        e += 2 * flipped * nbr_sum;
        m += 2 * flipped;
        bump(e, m);
    }

    IsingPolynomial::Terms terms;
    for (long ee = -e_span; ee <= e_span; ++ee)
        for (std::size_t mi = 0; mi < m_bins; ++mi) {
            const std::uint64_t count = hist[(std::size_t)(ee + e_span) * m_bins + mi];
            if (count) terms[{(int)ee, (int)(2 * (long)mi - g.n())}] = count;
        }
    return IsingPolynomial(g.n(), std::move(terms));
}

} // namespace detail

/// Full Ising polynomial by direct enumeration of all 2^n configurations.
inline IsingPolynomial classical_spectrum(const Graph& g) {
    if (g.n() > kEnumerationCap)
        throw resource_error("classical_spectrum: n=" + std::to_string(g.n()) + " exceeds the direct cap " +
                             std::to_string(kEnumerationCap) + "; use classical_spectrum_auto");
    std::vector<int> all((std::size_t)g.n());
    std::iota(all.begin(), all.end(), 0);
    return detail::enumerate_spins(g, std::move(all), std::vector<int>((std::size_t)g.n(), -1));
}

/// Rooted Ising polynomial: same sum with the root spin pinned to +1.
inline IsingPolynomial rooted_spectrum(const RootedGraph& rg) {
    const Graph& g = rg.graph;
    if (g.n() > kEnumerationCap)
        throw resource_error("rooted_spectrum: n=" + std::to_string(g.n()) + " exceeds the direct cap " +
                             std::to_string(kEnumerationCap));
    std::vector<int> free;
    for (int v = 0; v < g.n(); ++v)
        if (v != rg.root - 1) free.push_back(v);
    std::vector<int> spins((std::size_t)g.n(), -1);
    spins[(std::size_t)rg.root - 1] = +1;
    return detail::enumerate_spins(g, std::move(free), std::move(spins));
}

/// Glues rg2 onto rg1 by identifying the two roots. The merged vertex keeps
/// rg1's root label; rg2's other vertices are appended as n1+1.. in order.
inline RootedGraph vertex_identify(const RootedGraph& rg1, const RootedGraph& rg2) {
    const int n1 = rg1.graph.n();
    std::vector<int> image((std::size_t)rg2.graph.n() + 1, 0); // 1-based
    int next = n1 + 1;
    for (int v = 1; v <= rg2.graph.n(); ++v) image[(std::size_t)v] = (v == rg2.root) ? rg1.root : next++;
    std::vector<Edge> edges = rg1.graph.edges();
    for (auto [i, j] : rg2.graph.edges()) edges.emplace_back(image[(std::size_t)i], image[(std::size_t)j]);
    return RootedGraph(Graph(n1 + rg2.graph.n() - 1, std::move(edges)), rg1.root);
}

} // namespace coising
