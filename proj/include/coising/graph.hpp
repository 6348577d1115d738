#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "coising/errors.hpp"
#include "coising/rng.hpp"

namespace coising {

using Edge = std::pair<int, int>; // 1-based, first < second

/// Undirected simple graph over vertices 1..n with a canonically sorted edge
/// set, so equal graphs compare equal bit-for-bit.
class Graph {
  public:
    Graph() = default;

    Graph(int n, std::vector<Edge> edges) : n_(n) {
        if (n < 1) throw std::invalid_argument("Graph: vertex count must be positive");
        for (auto& [i, j] : edges) {
            if (i == j) throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(i));
            if (i > j) std::swap(i, j);
            if (i < 1 || j > n)
                throw std::invalid_argument("Graph: edge (" + std::to_string(i) + "," + std::to_string(j) +
                                            ") out of range for n=" + std::to_string(n));
        }
        std::sort(edges.begin(), edges.end());
        auto dup = std::adjacent_find(edges.begin(), edges.end());
        if (dup != edges.end())
            throw std::invalid_argument("Graph: duplicate edge (" + std::to_string(dup->first) + "," +
                                        std::to_string(dup->second) + ")");
        edges_ = std::move(edges);
    }

    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_edge(int i, int j) const {
        if (i > j) std::swap(i, j);
        return std::binary_search(edges_.begin(), edges_.end(), Edge{i, j});
    }

    std::vector<int> degrees() const {
        std::vector<int> deg((std::size_t)n_, 0);
        for (auto [i, j] : edges_) {
            ++deg[(std::size_t)i - 1];
            ++deg[(std::size_t)j - 1];
        }
        return deg;
    }

    /// 0-based adjacency lists.
    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj((std::size_t)n_);
        for (auto [i, j] : edges_) {
            adj[(std::size_t)i - 1].push_back(j - 1);
            adj[(std::size_t)j - 1].push_back(i - 1);
        }
        for (auto& row : adj) std::sort(row.begin(), row.end());
        return adj;
    }

    friend bool operator==(const Graph& a, const Graph& b) = default;

  private:
    int n_ = 1;
    std::vector<Edge> edges_;
};

/// A bijection on 1..n; mapping()[v-1] is the image of vertex v.
class VertexPermutation {
  public:
    explicit VertexPermutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
        std::vector<bool> seen(mapping_.size(), false);
        for (int v : mapping_) {
            if (v < 1 || (std::size_t)v > mapping_.size() || seen[(std::size_t)v - 1])
                throw std::invalid_argument("VertexPermutation: mapping is not a bijection on 1..n");
            seen[(std::size_t)v - 1] = true;
        }
    }

    static VertexPermutation identity(int n) {
        std::vector<int> m((std::size_t)n);
        std::iota(m.begin(), m.end(), 1);
        return VertexPermutation(std::move(m));
    }

    static VertexPermutation random(int n, Rng& rng) {
        std::vector<int> m((std::size_t)n);
        std::iota(m.begin(), m.end(), 1);
        rng.shuffle(m);
        return VertexPermutation(std::move(m));
    }

    int size() const { return (int)mapping_.size(); }
    int operator()(int v) const { return mapping_[(std::size_t)v - 1]; }
    const std::vector<int>& mapping() const { return mapping_; }

    VertexPermutation inverse() const {
        std::vector<int> inv(mapping_.size());
        for (std::size_t i = 0; i < mapping_.size(); ++i) inv[(std::size_t)mapping_[i] - 1] = (int)i + 1;
        return VertexPermutation(std::move(inv));
    }

  private:
    std::vector<int> mapping_;
};

inline Graph relabel(const Graph& g, const VertexPermutation& p) {
    if (p.size() != g.n())
        throw std::invalid_argument("relabel: permutation length " + std::to_string(p.size()) +
                                    " != vertex count " + std::to_string(g.n()));
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (auto [i, j] : g.edges()) edges.emplace_back(p(i), p(j));
    return Graph(g.n(), std::move(edges));
}

inline int matrix_power_dim_check(int n, int k) {
    if (k < 1) throw std::invalid_argument("adjacency_power: k must be >= 1");
    return n;
}

/// A(G)^k with exact integer entries, row-major n x n.
inline std::vector<std::int64_t> adjacency_power(const Graph& g, int k) {
    const std::size_t n = (std::size_t)matrix_power_dim_check(g.n(), k);
    std::vector<std::int64_t> a(n * n, 0);
    for (auto [i, j] : g.edges()) {
        a[((std::size_t)i - 1) * n + (std::size_t)j - 1] = 1;
        a[((std::size_t)j - 1) * n + (std::size_t)i - 1] = 1;
    }
    std::vector<std::int64_t> result = a;
    std::vector<std::int64_t> scratch(n * n);
    for (int step = 1; step < k; ++step) {
        std::fill(scratch.begin(), scratch.end(), 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                const std::int64_t r = result[i * n + l];
                if (r == 0) continue;
                for (std::size_t j = 0; j < n; ++j) scratch[i * n + j] += r * a[l * n + j];
            }
        result.swap(scratch);
    }
    return result;
}

} // namespace coising
