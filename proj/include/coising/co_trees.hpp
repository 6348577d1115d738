#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "coising/graph.hpp"
#include "coising/spectrum.hpp"

namespace coising {

namespace detail {

/// Beyer-Hedetniemi: all canonical level sequences of rooted trees on n
/// vertices, starting from the path and ending at the star.
inline std::vector<std::vector<int>> rooted_tree_level_sequences(int n) {
    std::vector<std::vector<int>> all;
    std::vector<int> level((std::size_t)n);
    std::iota(level.begin(), level.end(), 1);
    for (;;) {
        all.push_back(level);
        int p = -1;
        for (int i = n - 1; i >= 0; --i)
            if (level[(std::size_t)i] > 2) {
                p = i;
                break;
            }
        if (p < 0) break;
        int q = -1;
        for (int i = p - 1; i >= 0; --i)
            if (level[(std::size_t)i] == level[(std::size_t)p] - 1) {
                q = i;
                break;
            }
        for (int i = p; i < n; ++i) level[(std::size_t)i] = level[(std::size_t)(i - (p - q))];
    }
    return all;
}

inline Graph tree_from_level_sequence(const std::vector<int>& level) {
    const int n = (int)level.size();
    if (n == 1) return Graph(1, {});
    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i) {
        for (int j = i - 1; j >= 0; --j)
            if (level[(std::size_t)j] == level[(std::size_t)i] - 1) {
                edges.emplace_back(j + 1, i + 1);
                break;
            }
    }
    return Graph(n, std::move(edges));
}

/// AHU canonical encoding of a tree rooted at `root` (0-based).
inline std::string ahu_encoding(const std::vector<std::vector<int>>& adj, int root, int parent) {
    std::vector<std::string> children;
    for (int u : adj[(std::size_t)root])
        if (u != parent) children.push_back(ahu_encoding(adj, u, root));
    std::sort(children.begin(), children.end());
    std::string code = "(";
    for (const auto& c : children) code += c;
    code += ")";
    return code;
}

/// Canonical free-tree key: AHU from the centroid (joined pair if bicentral).
inline std::string free_tree_key(const Graph& g) {
    const auto adj = g.adjacency();
    const int n = g.n();
    if (n == 1) return "()";
    std::vector<int> subtree((std::size_t)n, 1);
    // Centroids minimize the largest component after removal.
    std::vector<int> order, parent((std::size_t)n, -1), stack{0};
    std::vector<bool> seen((std::size_t)n, false);
    seen[0] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int u : adj[(std::size_t)v])
            if (!seen[(std::size_t)u]) {
                seen[(std::size_t)u] = true;
                parent[(std::size_t)u] = v;
                stack.push_back(u);
            }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[(std::size_t)*it] >= 0) subtree[(std::size_t)parent[(std::size_t)*it]] += subtree[(std::size_t)*it];
    int best = n;
    std::vector<int> centroids;
    for (int v = 0; v < n; ++v) {
        int heaviest = n - subtree[(std::size_t)v];
        for (int u : adj[(std::size_t)v])
            if (parent[(std::size_t)u] == v) heaviest = std::max(heaviest, subtree[(std::size_t)u]);
        if (heaviest < best) {
            best = heaviest;
            centroids = {v};
        } else if (heaviest == best) {
            centroids.push_back(v);
        }
    }
    std::vector<std::string> codes;
    for (int c : centroids) codes.push_back(ahu_encoding(adj, c, -1));
    std::sort(codes.begin(), codes.end());
    std::string key;
    for (const auto& c : codes) key += c;
    return key;
}

} // namespace detail

/// All free trees with exactly n vertices, one representative each.
inline std::vector<Graph> free_trees(int n) {
    std::vector<Graph> trees;
    std::map<std::string, bool> seen;
    for (const auto& level : detail::rooted_tree_level_sequences(n)) {
        Graph t = detail::tree_from_level_sequence(level);
        auto key = detail::free_tree_key(t);
        if (!seen.count(key)) {
            seen[key] = true;
            trees.push_back(std::move(t));
        }
    }
    return trees;
}

struct CoRootedPair {
    RootedGraph first;
    RootedGraph second;
    IsingPolynomial shared_spectrum;
};

/// Searches rooted trees up to max_n vertices for pairs that share a rooted
/// polynomial without being isomorphic as rooted trees. Root choices are
/// deduplicated by orbit, so each rooted tree appears once.
inline std::vector<CoRootedPair> find_co_rooted_trees(int max_n) {
    if (max_n > 12) throw std::invalid_argument("find_co_rooted_trees: max_n capped at 12");
    struct Entry {
        RootedGraph rg;
        std::string rooted_key;
    };
    std::map<std::string, std::vector<Entry>> by_spectrum; // polynomial fingerprint -> entries
    std::vector<std::string> fingerprint_order;

    for (int n = 1; n <= max_n; ++n) {
        for (const auto& tree : free_trees(n)) {
            const auto adj = tree.adjacency();
            std::map<std::string, bool> root_orbits;
            for (int root = 1; root <= n; ++root) {
                auto rooted_key = detail::ahu_encoding(adj, root - 1, -1);
                if (root_orbits.count(rooted_key)) continue;
                root_orbits[rooted_key] = true;
                RootedGraph rg(tree, root);
                auto spectrum = rooted_spectrum(rg);
                std::string fp = polynomial_to_json(spectrum).dump();
                if (!by_spectrum.count(fp)) fingerprint_order.push_back(fp);
                by_spectrum[fp].push_back({std::move(rg), std::move(rooted_key)});
            }
        }
    }

    std::vector<CoRootedPair> pairs;
    for (const auto& fp : fingerprint_order) {
        const auto& group = by_spectrum[fp];
        for (std::size_t i = 0; i < group.size(); ++i)
            for (std::size_t j = i + 1; j < group.size(); ++j) {
                if (group[i].rooted_key == group[j].rooted_key) continue;
                pairs.push_back({group[i].rg, group[j].rg, rooted_spectrum(group[i].rg)});
            }
    }
    return pairs;
}

} // namespace coising
