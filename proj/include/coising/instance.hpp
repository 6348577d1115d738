#pragma once

#include <tuple>
#include <vector>

#include "coising/graph.hpp"

namespace coising {

/// Classical Ising instance: pair couplings J_ij on stored i<j plus
/// longitudinal fields h_i. Catalog instances carry J = h = +1; gauge
/// transforms flip signs but never magnitudes.
struct IsingInstance {
    int n = 1;
    std::vector<std::tuple<int, int, double>> couplings; // 1-based, i < j
    std::vector<double> fields;

    static IsingInstance from_graph(const Graph& g) {
        IsingInstance inst;
        inst.n = g.n();
        inst.couplings.reserve(g.edge_count());
        for (auto [i, j] : g.edges()) inst.couplings.emplace_back(i, j, 1.0);
        inst.fields.assign((std::size_t)g.n(), 1.0);
        return inst;
    }

    /// Support graph of the couplings (the logical graph for ±1 instances).
    Graph support() const {
        std::vector<Edge> edges;
        for (auto [i, j, jij] : couplings)
            if (jij != 0.0) edges.emplace_back(i, j);
        return Graph(n, std::move(edges));
    }

    friend bool operator==(const IsingInstance& a, const IsingInstance& b) = default;
};

} // namespace coising
