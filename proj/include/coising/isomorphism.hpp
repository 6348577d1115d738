#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "coising/graph.hpp"

namespace coising {

namespace detail {

/// Iterated degree refinement (1-dim Weisfeiler-Leman). Returns a stable
/// coloring; isomorphic graphs refined jointly get matching color histograms.
inline std::vector<int> refine_colors(const std::vector<std::vector<int>>& adj, std::vector<int> colors) {
    const std::size_t n = adj.size();
    for (;;) {
        std::map<std::pair<int, std::vector<int>>, int> signature_ids;
        std::vector<int> next(n);
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<int> nbr_colors;
            nbr_colors.reserve(adj[v].size());
            for (int u : adj[v]) nbr_colors.push_back(colors[(std::size_t)u]);
            std::sort(nbr_colors.begin(), nbr_colors.end());
            auto key = std::make_pair(colors[v], std::move(nbr_colors));
            auto [it, inserted] = signature_ids.emplace(std::move(key), (int)signature_ids.size());
            next[v] = it->second;
        }
        if (next == colors) return colors;
        colors = std::move(next);
    }
}

struct IsoSearch {
    const std::vector<std::vector<bool>>& adj1;
    const std::vector<std::vector<bool>>& adj2;
    const std::vector<int>& colors1;
    const std::vector<int>& colors2;
    std::vector<int>& mapping;  // 0-based image of g1 vertex, -1 unset
    std::vector<bool>& used;
    const std::vector<int>& order;

    bool extend(std::size_t depth) {
        if (depth == order.size()) return true;
        const int v = order[depth];
        for (std::size_t w = 0; w < adj2.size(); ++w) {
            if (used[w] || colors2[w] != colors1[(std::size_t)v]) continue;
            bool consistent = true;
            for (std::size_t d = 0; d < depth; ++d) {
                const int u = order[d];
                if (adj1[(std::size_t)v][(std::size_t)u] != adj2[w][(std::size_t)mapping[(std::size_t)u]]) {
                    consistent = false;
                    break;
                }
            }
            if (!consistent) continue;
            mapping[(std::size_t)v] = (int)w;
            used[w] = true;
            if (extend(depth + 1)) return true;
            mapping[(std::size_t)v] = -1;
            used[w] = false;
        }
        return false;
    }
};

inline std::vector<std::vector<bool>> adjacency_matrix(const Graph& g) {
    std::vector<std::vector<bool>> adj((std::size_t)g.n(), std::vector<bool>((std::size_t)g.n(), false));
    for (auto [i, j] : g.edges()) {
        adj[(std::size_t)i - 1][(std::size_t)j - 1] = true;
        adj[(std::size_t)j - 1][(std::size_t)i - 1] = true;
    }
    return adj;
}

} // namespace detail

/// Exhaustive isomorphism test; returns a witness permutation p with
/// relabel(g1, p) == g2 when the graphs are isomorphic.
inline std::optional<VertexPermutation> isomorphism_witness(const Graph& g1, const Graph& g2) {
    if (g1.n() != g2.n() || g1.edge_count() != g2.edge_count()) return std::nullopt;
    const std::size_t n = (std::size_t)g1.n();

    // Joint color refinement: start from degrees, refine both graphs against a
    // shared signature table so color ids are comparable.
    auto adj_list1 = g1.adjacency();
    auto adj_list2 = g2.adjacency();
    std::vector<std::vector<int>> joint(adj_list1.size() + adj_list2.size());
    for (std::size_t v = 0; v < n; ++v) joint[v] = adj_list1[v];
    for (std::size_t v = 0; v < n; ++v) {
        joint[n + v].reserve(adj_list2[v].size());
        for (int u : adj_list2[v]) joint[n + v].push_back(u + (int)n);
    }
    std::vector<int> seed_colors(2 * n, 0);
    auto joint_colors = detail::refine_colors(joint, std::move(seed_colors));
    std::vector<int> colors1(joint_colors.begin(), joint_colors.begin() + (long)n);
    std::vector<int> colors2(joint_colors.begin() + (long)n, joint_colors.end());

    // Color histograms must match exactly.
    std::map<int, int> hist;
    for (int c : colors1) ++hist[c];
    for (int c : colors2) --hist[c];
    for (auto [c, count] : hist)
        if (count != 0) return std::nullopt;

    // Search order: most-constrained color class first, keeping connectivity
    // to already-placed vertices where possible.
    std::map<int, int> class_size;
    for (int c : colors1) ++class_size[c];
    std::vector<int> order;
    std::vector<bool> placed(n, false);
    while (order.size() < n) {
        int best = -1;
        bool best_connected = false;
        for (std::size_t v = 0; v < n; ++v) {
            if (placed[v]) continue;
            bool connected = std::any_of(adj_list1[v].begin(), adj_list1[v].end(),
                                         [&](int u) { return placed[(std::size_t)u]; });
            if (best == -1 || (connected && !best_connected) ||
                (connected == best_connected &&
                 class_size[colors1[v]] < class_size[colors1[(std::size_t)best]])) {
                best = (int)v;
                best_connected = connected;
            }
        }
        placed[(std::size_t)best] = true;
        order.push_back(best);
    }

    auto adj1 = detail::adjacency_matrix(g1);
    auto adj2 = detail::adjacency_matrix(g2);
    std::vector<int> mapping(n, -1);
    std::vector<bool> used(n, false);
    detail::IsoSearch search{adj1, adj2, colors1, colors2, mapping, used, order};
    if (!search.extend(0)) return std::nullopt;
    std::vector<int> one_based(n);
    for (std::size_t v = 0; v < n; ++v) one_based[v] = mapping[v] + 1;
    return VertexPermutation(std::move(one_based));
}

inline bool are_isomorphic(const Graph& g1, const Graph& g2) {
    return isomorphism_witness(g1, g2).has_value();
}

} // namespace coising
