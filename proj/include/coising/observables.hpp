#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "coising/graph.hpp"
#include "coising/instance.hpp"

namespace coising {

/// The four diagonal thermal averages with per-field standard errors
/// (zero for exact computations).
struct ObservableSet {
    double energy = 0.0;        // <H_p>
    double magnetization = 0.0; // <M_z>
    double q2 = 0.0;            // spin-glass order parameter
    double omega2 = 0.0;        // next-nearest-neighbor interaction energy
    double energy_err = 0.0;
    double magnetization_err = 0.0;
    double q2_err = 0.0;
    double omega2_err = 0.0;

    double value(int index) const {
        const double vals[4] = {energy, magnetization, q2, omega2};
        return vals[index];
    }
    double error(int index) const {
        const double errs[4] = {energy_err, magnetization_err, q2_err, omega2_err};
        return errs[index];
    }
};

inline constexpr const char* kObservableNames[4] = {"energy", "magnetization", "q2", "omega2"};

/// Pairwise <σ_i^z σ_j^z> (unit diagonal) plus the single-site <σ_i^z>.
struct CorrelationMatrix {
    int n = 0;
    std::vector<double> values;  // n x n row-major, symmetric
    std::vector<double> singles; // length n

    double at(int i, int j) const { return values[(std::size_t)(i - 1) * (std::size_t)n + (std::size_t)(j - 1)]; }
    double single(int i) const { return singles[(std::size_t)(i - 1)]; }
};

/// Assembles all four observables from a correlation matrix. Couplings and
/// fields are taken from the instance; Q2 and Ω² weights come from the
/// coupling support graph. Ω² runs over all ordered pairs including i = j.
inline ObservableSet observables_from_correlations(const CorrelationMatrix& c, const IsingInstance& inst) {
    if (c.n != inst.n) throw std::invalid_argument("observables_from_correlations: dimension mismatch");
    ObservableSet obs;
    for (auto [i, j, jij] : inst.couplings) obs.energy += jij * c.at(i, j);
    for (int i = 1; i <= inst.n; ++i) {
        obs.energy += inst.fields[(std::size_t)i - 1] * c.single(i);
        obs.magnetization += c.single(i);
    }
    const std::size_t n = (std::size_t)inst.n;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) sum_sq += c.values[i * n + j] * c.values[i * n + j];
    obs.q2 = inst.n > 1 ? std::sqrt(sum_sq / ((double)n * (double)(n - 1))) : 0.0;

    const auto a2 = adjacency_power(inst.support(), 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) obs.omega2 += (double)a2[i * n + j] * c.values[i * n + j];
    return obs;
}

inline ObservableSet observables_from_correlations(const CorrelationMatrix& c, const Graph& g) {
    return observables_from_correlations(c, IsingInstance::from_graph(g));
}

/// Correlations of a diagonal distribution p over 2^n basis states
/// (bit i set = spin up).
inline CorrelationMatrix correlations_from_diagonal(const std::vector<double>& p, int n) {
    const std::size_t nn = (std::size_t)n;
    CorrelationMatrix c;
    c.n = n;
    c.values.assign(nn * nn, 0.0);
    c.singles.assign(nn, 0.0);
    for (std::uint64_t z = 0; z < p.size(); ++z) {
        const double w = p[z];
        if (w == 0.0) continue;
        for (std::size_t i = 0; i < nn; ++i) {
            const double si = (z >> i & 1) ? 1.0 : -1.0;
            c.singles[i] += w * si;
            for (std::size_t j = i + 1; j < nn; ++j) {
                const double sj = (z >> j & 1) ? 1.0 : -1.0;
                c.values[i * nn + j] += w * si * sj;
            }
        }
    }
    for (std::size_t i = 0; i < nn; ++i) {
        c.values[i * nn + i] = 1.0;
        for (std::size_t j = i + 1; j < nn; ++j) c.values[j * nn + i] = c.values[i * nn + j];
    }
    return c;
}

/// Applies gauge signs to measured correlations: c_ij -> a_i a_j c_ij,
/// singles_i -> a_i singles_i. Undoes a gauge on the observable side.
inline CorrelationMatrix degauge_correlations(const CorrelationMatrix& c, const std::vector<int>& signs) {
    if ((int)signs.size() != c.n) throw std::invalid_argument("degauge_correlations: sign count mismatch");
    CorrelationMatrix out = c;
    const std::size_t n = (std::size_t)c.n;
    for (std::size_t i = 0; i < n; ++i) {
        out.singles[i] *= signs[i];
        for (std::size_t j = 0; j < n; ++j) out.values[i * n + j] *= (double)(signs[i] * signs[j]);
    }
    return out;
}

} // namespace coising
