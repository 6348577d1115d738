#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "coising/errors.hpp"
#include "coising/graph.hpp"
#include "coising/ising_polynomial.hpp"
#include "coising/spectrum.hpp"

namespace coising {

namespace detail {

struct BlockCut {
    std::vector<std::vector<int>> block_vertices; // 0-based vertex sets
    std::vector<std::vector<Edge>> block_edges;   // 1-based edges per block
    std::vector<bool> is_articulation;            // per vertex, 0-based
};

/// Hopcroft-Tarjan biconnected components of one connected component.
inline BlockCut biconnected_components(const Graph& g, const std::vector<int>& component) {
    const auto adj = g.adjacency();
    const std::size_t n = (std::size_t)g.n();
    BlockCut out;
    out.is_articulation.assign(n, false);

    std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
    std::vector<Edge> edge_stack;
    int timer = 0;

    auto pop_block = [&](Edge until) {
        std::vector<Edge> block;
        for (;;) {
            Edge e = edge_stack.back();
            edge_stack.pop_back();
            block.push_back(e);
            if (e == until) break;
        }
        std::set<int> verts;
        for (auto [i, j] : block) {
            verts.insert(i - 1);
            verts.insert(j - 1);
        }
        std::sort(block.begin(), block.end());
        out.block_edges.push_back(std::move(block));
        out.block_vertices.emplace_back(verts.begin(), verts.end());
    };

    std::function<void(int)> dfs = [&](int u) {
        disc[(std::size_t)u] = low[(std::size_t)u] = timer++;
        int children = 0;
        for (int v : adj[(std::size_t)u]) {
            if (disc[(std::size_t)v] == -1) {
                ++children;
                parent[(std::size_t)v] = u;
                Edge tree_edge{std::min(u, v) + 1, std::max(u, v) + 1};
                edge_stack.push_back(tree_edge);
                dfs(v);
                low[(std::size_t)u] = std::min(low[(std::size_t)u], low[(std::size_t)v]);
                if ((parent[(std::size_t)u] == -1 && children > 1) ||
                    (parent[(std::size_t)u] != -1 && low[(std::size_t)v] >= disc[(std::size_t)u]))
                    out.is_articulation[(std::size_t)u] = true;
                if (low[(std::size_t)v] >= disc[(std::size_t)u]) pop_block(tree_edge);
            } else if (v != parent[(std::size_t)u] && disc[(std::size_t)v] < disc[(std::size_t)u]) {
                edge_stack.push_back({std::min(u, v) + 1, std::max(u, v) + 1});
                low[(std::size_t)u] = std::min(low[(std::size_t)u], disc[(std::size_t)v]);
            }
        }
    };

    dfs(component.front());
    return out;
}

/// Induced-subgraph enumeration: maps block vertices to 1..|B|, enumerates
/// spins grouped by the spin pattern of the block's dependent cut vertices.
/// Key = (e, m, mask); mask bit b set when dependent vertex b has spin +1.
struct BlockHistogram {
    std::map<std::tuple<int, int, std::uint32_t>, std::uint64_t> groups;
};

inline BlockHistogram enumerate_block(const std::vector<int>& vertices, const std::vector<Edge>& edges,
                                      const std::vector<int>& dependents, int pinned_vertex) {
    const int bsize = (int)vertices.size();
    if (bsize > kEnumerationCap)
        throw resource_error("classical_spectrum_auto: a biconnected component has " + std::to_string(bsize) +
                             " vertices, above the 2^" + std::to_string(kEnumerationCap) + " enumeration cap");
    if (dependents.size() > 20)
        throw resource_error("classical_spectrum_auto: block with " + std::to_string(dependents.size()) +
                             " dependent cut vertices is beyond the grouping cap");

    std::vector<int> local((std::size_t)*std::max_element(vertices.begin(), vertices.end()) + 1, -1);
    for (int i = 0; i < bsize; ++i) local[(std::size_t)vertices[(std::size_t)i]] = i;

    std::vector<std::vector<int>> adj((std::size_t)bsize);
    for (auto [i, j] : edges) {
        adj[(std::size_t)local[(std::size_t)i - 1]].push_back(local[(std::size_t)j - 1]);
        adj[(std::size_t)local[(std::size_t)j - 1]].push_back(local[(std::size_t)i - 1]);
    }
    std::vector<std::uint32_t> dependent_bit((std::size_t)bsize, 0);
    for (std::size_t b = 0; b < dependents.size(); ++b)
        dependent_bit[(std::size_t)local[(std::size_t)dependents[b]]] = (std::uint32_t)(1u << b);

    std::vector<int> free;
    const int pinned_local = pinned_vertex >= 0 ? local[(std::size_t)pinned_vertex] : -1;
    for (int v = 0; v < bsize; ++v)
        if (v != pinned_local) free.push_back(v);

    std::vector<int> spins((std::size_t)bsize, -1);
    if (pinned_local >= 0) spins[(std::size_t)pinned_local] = +1;

    long e = 0, m = 0;
    std::uint32_t mask = 0;
    for (int v = 0; v < bsize; ++v) {
        m += spins[(std::size_t)v];
        if (spins[(std::size_t)v] > 0) mask |= dependent_bit[(std::size_t)v];
    }
    for (std::size_t v = 0; v < (std::size_t)bsize; ++v)
        for (int u : adj[v])
            if ((int)v < u) e += spins[v] * spins[(std::size_t)u];

    BlockHistogram hist;
    ++hist.groups[{(int)e, (int)m, mask}];
    const std::uint64_t steps = 1ull << free.size();
    for (std::uint64_t step = 1; step < steps; ++step) {
        const int v = free[(std::size_t)std::countr_zero(step)];
        const int flipped = -spins[(std::size_t)v];
        spins[(std::size_t)v] = flipped;
        long nbr = 0;
        for (int u : adj[(std::size_t)v]) nbr += spins[(std::size_t)u];
        e += 2 * flipped * nbr;
        m += 2 * flipped;
        mask ^= dependent_bit[(std::size_t)v];
        ++hist.groups[{(int)e, (int)m, mask}];
    }
    return hist;
}

struct ComponentDecomposer {
    const BlockCut& bc;
    std::map<int, std::vector<int>> blocks_of_vertex; // 0-based vertex -> block ids
    std::vector<bool> block_done;

    explicit ComponentDecomposer(const BlockCut& bc_) : bc(bc_), block_done(bc_.block_vertices.size(), false) {
        for (std::size_t b = 0; b < bc.block_vertices.size(); ++b)
            for (int v : bc.block_vertices[b]) blocks_of_vertex[v].push_back((int)b);
    }

    /// Rooted polynomial (root pinned +1, counted in m) of everything hanging
    /// below `vertex` through blocks not yet visited.
    IsingPolynomial branch_rooted(int vertex) {
        IsingPolynomial combined; // n=0 empty marker
        bool first = true;
        for (int b : blocks_of_vertex[vertex]) {
            if (block_done[(std::size_t)b]) continue;
            auto piece = block_poly((std::size_t)b, vertex);
            combined = first ? std::move(piece) : compose_rooted(combined, piece);
            first = false;
        }
        if (first) return IsingPolynomial(1, {{{0, 1}, 1}}); // bare vertex, spin +1
        return combined;
    }

    /// Polynomial of block b plus its descendants. With entry >= 0 the entry
    /// vertex is pinned +1 and the result is rooted there; otherwise full.
    IsingPolynomial block_poly(std::size_t b, int entry) {
        block_done[b] = true;
        const auto& verts = bc.block_vertices[b];

        std::vector<int> dependents;
        for (int v : verts)
            if (v != entry && bc.is_articulation[(std::size_t)v]) {
                bool has_pending = false;
                for (int nb : blocks_of_vertex[v])
                    if (!block_done[(std::size_t)nb]) has_pending = true;
                if (has_pending) dependents.push_back(v);
            }

        auto hist = enumerate_block(verts, bc.block_edges[b], dependents, entry);

        // Children polynomials, conditioned on the dependent vertex spin:
        // plus[i] for spin +1 (root double-counted in m, shift -1), minus[i]
        // is the global flip for spin -1 (shift +1).
        std::vector<IsingPolynomial> plus, minus;
        int extra_n = 0;
        for (int u : dependents) {
            auto r = branch_rooted(u);
            extra_n += r.n() - 1;
            IsingPolynomial::Terms shifted_plus, shifted_minus;
            for (const auto& [key, count] : r.terms()) {
                shifted_plus[{key.first, key.second - 1}] = count;
                shifted_minus[{key.first, -key.second + 1}] = count;
            }
            plus.emplace_back(r.n() - 1, std::move(shifted_plus));
            minus.emplace_back(r.n() - 1, std::move(shifted_minus));
        }

        std::map<std::uint32_t, IsingPolynomial::Terms> by_mask;
        for (const auto& [key, count] : hist.groups) {
            auto [e, m, mask] = key;
            by_mask[mask][{e, m}] += count;
        }

        IsingPolynomial result(0, {});
        for (auto& [mask, terms] : by_mask) {
            IsingPolynomial acc((int)verts.size() + extra_n, std::move(terms));
            // n bookkeeping is handled once at the end; factors carry n=|branch|-1.
            for (std::size_t i = 0; i < plus.size(); ++i) {
                const auto& factor = (mask >> i & 1) ? plus[i] : minus[i];
                IsingPolynomial::Terms prod;
                for (const auto& [k1, c1] : acc.terms())
                    for (const auto& [k2, c2] : factor.terms())
                        prod[{k1.first + k2.first, k1.second + k2.second}] += c1 * c2;
                acc = IsingPolynomial(acc.n(), std::move(prod));
            }
            result += acc;
        }
        return IsingPolynomial((int)verts.size() + extra_n, result.terms());
    }
};

} // namespace detail

/// Exact Ising polynomial via cut-vertex decomposition: articulation points
/// split the graph into biconnected blocks small enough to enumerate; rooted
/// pieces recombine through the rooted-polynomial product.
inline IsingPolynomial classical_spectrum_auto(const Graph& g) {
    const auto adj = g.adjacency();
    std::vector<int> component_of((std::size_t)g.n(), -1);
    std::vector<std::vector<int>> components;
    for (int v = 0; v < g.n(); ++v) {
        if (component_of[(std::size_t)v] != -1) continue;
        std::vector<int> stack{v}, members;
        component_of[(std::size_t)v] = (int)components.size();
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            members.push_back(u);
            for (int w : adj[(std::size_t)u])
                if (component_of[(std::size_t)w] == -1) {
                    component_of[(std::size_t)w] = (int)components.size();
                    stack.push_back(w);
                }
        }
        components.push_back(std::move(members));
    }

    IsingPolynomial result(0, {{{0, 0}, 1}});
    for (const auto& comp : components) {
        IsingPolynomial part;
        if (comp.size() == 1) {
            part = IsingPolynomial(1, {{{0, 1}, 1}, {{0, -1}, 1}});
        } else {
            auto bc = detail::biconnected_components(g, comp);
            detail::ComponentDecomposer dec(bc);
            part = dec.block_poly(0, -1);
        }
        result = disjoint_product(result, part);
    }
    return result;
}

/// Articulation vertices (1-based) — the cut points the decomposition uses.
inline std::vector<int> articulation_vertices(const Graph& g) {
    const auto adj = g.adjacency();
    std::vector<bool> seen((std::size_t)g.n(), false);
    std::vector<int> cuts;
    for (int v = 0; v < g.n(); ++v) {
        if (seen[(std::size_t)v]) continue;
        std::vector<int> stack{v}, members;
        seen[(std::size_t)v] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            members.push_back(u);
            for (int w : adj[(std::size_t)u])
                if (!seen[(std::size_t)w]) {
                    seen[(std::size_t)w] = true;
                    stack.push_back(w);
                }
        }
        if (members.size() < 2) continue;
        auto bc = detail::biconnected_components(g, members);
        for (int u = 0; u < g.n(); ++u)
            if (bc.is_articulation[(std::size_t)u]) cuts.push_back(u + 1);
    }
    std::sort(cuts.begin(), cuts.end());
    return cuts;
}

inline bool co_ising(const Graph& g1, const Graph& g2) {
    if (g1.n() != g2.n() || g1.edge_count() != g2.edge_count()) return false;
    return classical_spectrum_auto(g1) == classical_spectrum_auto(g2);
}

} // namespace coising
