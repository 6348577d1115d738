#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "coising/graph.hpp"
#include "coising/rng.hpp"

namespace coising {

/// m x m grid of K_{4,4} cells. Qubit linear index = 8(m·row + col) + unit;
/// units 0-3 form the left side of a cell, 4-7 the right side. Left qubits
/// couple vertically to the same unit in the cell below, right qubits
/// horizontally to the same unit in the cell to the right.
struct ChimeraTopology {
    int m = 1;
    std::vector<std::vector<int>> adjacency; // per qubit, sorted

    int num_qubits() const { return 8 * m * m; }

    std::size_t num_couplers() const {
        std::size_t total = 0;
        for (const auto& nbrs : adjacency) total += nbrs.size();
        return total / 2;
    }

    bool has_coupler(int q1, int q2) const {
        const auto& nbrs = adjacency[(std::size_t)q1];
        return std::binary_search(nbrs.begin(), nbrs.end(), q2);
    }
};

inline ChimeraTopology chimera_graph(int m) {
    if (m < 1) throw std::invalid_argument("chimera_graph: m must be positive");
    ChimeraTopology topo;
    topo.m = m;
    topo.adjacency.assign((std::size_t)topo.num_qubits(), {});
    auto index = [m](int row, int col, int unit) { return 8 * (m * row + col) + unit; };
    auto couple = [&](int q1, int q2) {
        topo.adjacency[(std::size_t)q1].push_back(q2);
        topo.adjacency[(std::size_t)q2].push_back(q1);
    };
    for (int row = 0; row < m; ++row)
        for (int col = 0; col < m; ++col) {
            for (int left = 0; left < 4; ++left)
                for (int right = 4; right < 8; ++right) couple(index(row, col, left), index(row, col, right));
            if (row + 1 < m)
                for (int unit = 0; unit < 4; ++unit) couple(index(row, col, unit), index(row + 1, col, unit));
            if (col + 1 < m)
                for (int unit = 4; unit < 8; ++unit) couple(index(row, col, unit), index(row, col + 1, unit));
        }
    for (auto& nbrs : topo.adjacency) std::sort(nbrs.begin(), nbrs.end());
    return topo;
}

/// Injective vertex -> qubit assignment; every graph edge must land on a
/// coupler (unused couplers are free, their strength is simply zero).
struct EmbeddingMap {
    std::map<int, int> assignment; // 1-based vertex -> qubit linear index

    friend bool operator==(const EmbeddingMap& a, const EmbeddingMap& b) = default;
    friend auto operator<=>(const EmbeddingMap& a, const EmbeddingMap& b) = default;
};

inline bool verify_embedding(const Graph& g, const ChimeraTopology& topo, const EmbeddingMap& e) {
    if ((int)e.assignment.size() != g.n()) return false;
    std::set<int> used;
    for (const auto& [v, q] : e.assignment) {
        if (v < 1 || v > g.n() || q < 0 || q >= topo.num_qubits()) return false;
        if (!used.insert(q).second) return false;
    }
    for (auto [i, j] : g.edges())
        if (!topo.has_coupler(e.assignment.at(i), e.assignment.at(j))) return false;
    return true;
}

struct EmbeddingSearchResult {
    std::vector<EmbeddingMap> embeddings;
    bool budget_exhausted = false;
};

namespace detail {

struct EmbedSearch {
    const std::vector<std::vector<int>>& graph_adj; // 0-based
    const std::vector<int>& degrees;
    const ChimeraTopology& topo;
    const std::vector<int>& order; // vertex visit order, 0-based
    std::vector<int>& image;       // vertex -> qubit or -1
    std::vector<bool>& used;
    Rng& rng;
    std::uint64_t budget;
    std::uint64_t expansions = 0;
    std::vector<int> free_degree;     // unused topo-neighbors per qubit
    std::vector<int> pending_degree;  // unmapped graph-neighbors per vertex
    std::vector<int> vertex_at_qubit; // inverse image, -1 when free

    EmbedSearch(const std::vector<std::vector<int>>& graph_adj_, const std::vector<int>& degrees_,
                const ChimeraTopology& topo_, const std::vector<int>& order_, std::vector<int>& image_,
                std::vector<bool>& used_, Rng& rng_, std::uint64_t budget_)
        : graph_adj(graph_adj_), degrees(degrees_), topo(topo_), order(order_), image(image_),
          used(used_), rng(rng_), budget(budget_), pending_degree(degrees_) {
        free_degree.resize(topo.adjacency.size());
        for (std::size_t q = 0; q < topo.adjacency.size(); ++q)
            free_degree[q] = (int)topo.adjacency[q].size();
        vertex_at_qubit.assign(topo.adjacency.size(), -1);
    }

    // A mapped vertex must keep at least as many free adjacent qubits as it
    // has unmapped graph neighbors.
    bool viable_after(int q) {
        for (int nq : topo.adjacency[(std::size_t)q]) {
            const int w = vertex_at_qubit[(std::size_t)nq];
            if (w >= 0 && free_degree[(std::size_t)nq] < pending_degree[(std::size_t)w]) return false;
        }
        return true;
    }

    void assign(int v, int q) {
        image[(std::size_t)v] = q;
        used[(std::size_t)q] = true;
        vertex_at_qubit[(std::size_t)q] = v;
        for (int nq : topo.adjacency[(std::size_t)q]) --free_degree[(std::size_t)nq];
        for (int u : graph_adj[(std::size_t)v]) --pending_degree[(std::size_t)u];
    }

    void unassign(int v, int q) {
        image[(std::size_t)v] = -1;
        used[(std::size_t)q] = false;
        vertex_at_qubit[(std::size_t)q] = -1;
        for (int nq : topo.adjacency[(std::size_t)q]) ++free_degree[(std::size_t)nq];
        for (int u : graph_adj[(std::size_t)v]) ++pending_degree[(std::size_t)u];
    }

    bool extend(std::size_t depth) {
        if (depth == order.size()) return true;
        if (expansions >= budget) return false;
        const int v = order[depth];
        std::vector<int> candidates;
        int anchor = -1;
        for (int u : graph_adj[(std::size_t)v])
            if (image[(std::size_t)u] >= 0) {
                anchor = image[(std::size_t)u];
                break;
            }
        if (anchor >= 0) {
            candidates = topo.adjacency[(std::size_t)anchor];
        } else {
            candidates.resize((std::size_t)topo.num_qubits());
            std::iota(candidates.begin(), candidates.end(), 0);
        }
        rng.shuffle(candidates);
        for (int q : candidates) {
            if (used[(std::size_t)q]) continue;
            if ((int)topo.adjacency[(std::size_t)q].size() < degrees[(std::size_t)v]) continue;
            if (free_degree[(std::size_t)q] < pending_degree[(std::size_t)v]) continue;
            bool consistent = true;
            for (int u : graph_adj[(std::size_t)v]) {
                const int uq = image[(std::size_t)u];
                if (uq >= 0 && !topo.has_coupler(q, uq)) {
                    consistent = false;
                    break;
                }
            }
            if (!consistent) continue;
            ++expansions;
            assign(v, q);
            if (viable_after(q) && extend(depth + 1)) return true;
            unassign(v, q);
            if (expansions >= budget) return false;
        }
        return false;
    }
};

} // namespace detail

/// Randomized backtracking search for up to k distinct native embeddings.
/// Deterministic for a fixed seed: restarts draw independent sub-seeded
/// vertex orders and candidate shuffles, results are deduplicated and kept
/// in discovery order.
inline EmbeddingSearchResult find_native_embeddings(const Graph& g, const ChimeraTopology& topo, int k,
                                                    std::uint64_t seed, int restarts = 50,
                                                    std::uint64_t budget_per_restart = 10'000'000) {
    EmbeddingSearchResult result;
    if (k < 1) return result;
    const auto graph_adj = g.adjacency();
    const auto degrees = g.degrees();
    std::set<EmbeddingMap> seen;

    for (int restart = 0; restart < restarts && (int)result.embeddings.size() < k; ++restart) {
        Rng rng(sub_seed(seed, (std::uint64_t)restart));
        // Most-constrained-first order: grow from a highest-degree seed,
        // always extending at the unplaced vertex with the most placed
        // neighbors. Keeps candidate sets coupler-sized and fails early.
        std::vector<int> order;
        std::vector<bool> placed((std::size_t)g.n(), false);
        std::vector<int> placed_neighbors((std::size_t)g.n(), 0);
        while ((int)order.size() < g.n()) {
            std::vector<int> best;
            for (int v = 0; v < g.n(); ++v) {
                if (placed[(std::size_t)v]) continue;
                if (best.empty()) {
                    best = {v};
                    continue;
                }
                const int b = best.front();
                const auto key = [&](int x) {
                    return std::pair<int, int>(placed_neighbors[(std::size_t)x], degrees[(std::size_t)x]);
                };
                if (key(v) > key(b))
                    best = {v};
                else if (key(v) == key(b))
                    best.push_back(v);
            }
            const int next = best[(std::size_t)rng.below(best.size())];
            placed[(std::size_t)next] = true;
            order.push_back(next);
            for (int u : graph_adj[(std::size_t)next]) ++placed_neighbors[(std::size_t)u];
        }

        std::vector<int> image((std::size_t)g.n(), -1);
        std::vector<bool> used((std::size_t)topo.num_qubits(), false);
        detail::EmbedSearch search(graph_adj, degrees, topo, order, image, used, rng, budget_per_restart);
        if (!search.extend(0)) continue;
        EmbeddingMap found;
        for (int v = 0; v < g.n(); ++v) found.assignment[v + 1] = image[(std::size_t)v];
        if (seen.insert(found).second) result.embeddings.push_back(std::move(found));
    }
    result.budget_exhausted = (int)result.embeddings.size() < k;
    return result;
}

} // namespace coising
