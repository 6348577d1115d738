#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <unistd.h>
#include <vector>

#include <cblas.h>

#include "coising/detail/lapack.hpp"
#include "coising/errors.hpp"
#include "coising/hamiltonian.hpp"
#include "coising/observables.hpp"
#include "coising/parallel.hpp"
#include "coising/rng.hpp"
#include "coising/schedule.hpp"

namespace coising {

inline constexpr int kStochasticCap = 33;

/// Lanczos flavor: stored basis with full reorthogonalization when it fits
/// the memory budget, memory-lean two-pass recurrence otherwise.
enum class KrylovVariant { automatic, stored_basis, two_pass };

struct StochasticParams {
    int num_probes = 50;
    int krylov_dim = 80;
    std::uint64_t seed = 0;
    double convergence_tol = 1e-6;
    KrylovVariant variant = KrylovVariant::automatic;
};

struct StochasticThermalResult {
    ObservableSet observables;      // probe means, stderr = standard error over probes
    CorrelationMatrix correlations; // probe-averaged
    bool converged = true;          // false when any probe's Krylov residual exceeded tol
    double max_expv_error = 0.0;
};

namespace detail {

inline std::size_t usable_memory_bytes() {
    const long pages = sysconf(_SC_PHYS_PAGES);
    const long page = sysconf(_SC_PAGE_SIZE);
    if (pages <= 0 || page <= 0) return 8ull << 30;
    return (std::size_t)((double)pages * (double)page * 0.8);
}

// Basis storage above this budget switches to the two-pass recurrence; a
// fixed constant so results do not depend on the host's RAM.
inline constexpr std::size_t kBasisBudgetBytes = 3ull << 29; // 1.5 GiB

/// Coefficients c_j of f(H)v in the Lanczos basis, f = exp(-tau (x - shift)),
/// from the tridiagonal (alpha, beta). residual_beta is the off-diagonal that
/// would extend the basis; zero after exact breakdown.
struct SmallExp {
    std::vector<double> coeff;
    double error_estimate = 0.0;
};

inline SmallExp tridiag_exp(const std::vector<double>& alpha, const std::vector<double>& beta, double tau,
                            double shift, double residual_beta) {
    const std::size_t m = alpha.size();
    std::vector<double> d = alpha, e = beta, z;
    tridiag_eig(d, e, &z); // z column-major m x m
    std::vector<double> weights(m);
    for (std::size_t k = 0; k < m; ++k) weights[k] = std::exp(-tau * (d[k] - shift)) * z[k * m]; // U^T e_1
    SmallExp out;
    out.coeff.assign(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < m; ++k) acc += z[k * m + j] * weights[k];
        out.coeff[j] = acc;
    }
    double norm = 0.0;
    for (double c : out.coeff) norm += c * c;
    out.error_estimate = residual_beta * std::abs(out.coeff[m - 1]) / std::max(std::sqrt(norm), 1e-300);
    return out;
}

struct ExpvResult {
    std::vector<double> vec;
    double error_estimate = 0.0;
};

/// u = exp(-tau (H - shift)) v with a stored, fully reorthogonalized basis.
inline ExpvResult expv_stored(const HamiltonianAction& ham, double a, double b, double tau, double shift,
                              const std::vector<double>& v, int m) {
    const std::uint64_t dim = ham.dim();
    m = (int)std::min<std::uint64_t>((std::uint64_t)m, dim);
    std::vector<std::vector<double>> basis;
    basis.reserve((std::size_t)m);
    basis.push_back(v);
    std::vector<double> alpha, beta;
    std::vector<double> w(dim);
    double residual_beta = 0.0;
    for (int j = 0; j < m; ++j) {
        ham.apply(a, b, basis[(std::size_t)j].data(), w.data());
        alpha.push_back(cblas_ddot((blasint)dim, basis[(std::size_t)j].data(), 1, w.data(), 1));
        for (std::size_t k = 0; k <= (std::size_t)j; ++k) {
            const double overlap = cblas_ddot((blasint)dim, basis[k].data(), 1, w.data(), 1);
            cblas_daxpy((blasint)dim, -overlap, basis[k].data(), 1, w.data(), 1);
        }
        const double beta_j = cblas_dnrm2((blasint)dim, w.data(), 1);
        if (j + 1 == m || beta_j < 1e-13) {
            residual_beta = beta_j < 1e-13 ? 0.0 : beta_j;
            break;
        }
        beta.push_back(beta_j);
        std::vector<double> next(dim);
        for (std::uint64_t z = 0; z < dim; ++z) next[z] = w[z] / beta_j;
        basis.push_back(std::move(next));
    }
    auto small = tridiag_exp(alpha, beta, tau, shift, residual_beta);
    ExpvResult out;
    out.error_estimate = small.error_estimate;
    out.vec.assign(dim, 0.0);
    for (std::size_t j = 0; j < basis.size(); ++j)
        cblas_daxpy((blasint)dim, small.coeff[j], basis[j].data(), 1, out.vec.data(), 1);
    return out;
}

/// Two-pass variant: plain three-term recurrence, no stored basis. Pass one
/// collects the tridiagonal; pass two replays the identical arithmetic and
/// accumulates the expansion.
inline ExpvResult expv_two_pass(const HamiltonianAction& ham, double a, double b, double tau, double shift,
                                const std::vector<double>& v, int m) {
    const std::uint64_t dim = ham.dim();
    m = (int)std::min<std::uint64_t>((std::uint64_t)m, dim);
    std::vector<double> alpha, beta;
    std::vector<double> prev(dim, 0.0), cur = v, w(dim);
    double residual_beta = 0.0;
    double beta_prev = 0.0;
    for (int j = 0; j < m; ++j) {
        ham.apply(a, b, cur.data(), w.data());
        const double alpha_j = cblas_ddot((blasint)dim, cur.data(), 1, w.data(), 1);
        alpha.push_back(alpha_j);
        for (std::uint64_t z = 0; z < dim; ++z) w[z] -= alpha_j * cur[z] + beta_prev * prev[z];
        const double beta_j = cblas_dnrm2((blasint)dim, w.data(), 1);
        if (j + 1 == m || beta_j < 1e-13) {
            residual_beta = beta_j < 1e-13 ? 0.0 : beta_j;
            break;
        }
        beta.push_back(beta_j);
        for (std::uint64_t z = 0; z < dim; ++z) {
            prev[z] = cur[z];
            cur[z] = w[z] / beta_j;
        }
        beta_prev = beta_j;
    }

    auto small = tridiag_exp(alpha, beta, tau, shift, residual_beta);
    ExpvResult out;
    out.error_estimate = small.error_estimate;
    out.vec.assign(dim, 0.0);
    std::fill(prev.begin(), prev.end(), 0.0);
    cur = v;
    beta_prev = 0.0;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        cblas_daxpy((blasint)dim, small.coeff[j], cur.data(), 1, out.vec.data(), 1);
        if (j + 1 == alpha.size()) break;
        ham.apply(a, b, cur.data(), w.data());
        for (std::uint64_t z = 0; z < dim; ++z) w[z] -= alpha[j] * cur[z] + beta_prev * prev[z];
        for (std::uint64_t z = 0; z < dim; ++z) {
            prev[z] = cur[z];
            cur[z] = w[z] / beta[j];
        }
        beta_prev = beta[j];
    }
    return out;
}

/// Unnormalized spin sums of |u|²: gram holds Σ_z u_z² σ_i σ_j in the n x n
/// block, Σ u_z² σ_i in the last column, and the total weight Σ u_z² at the
/// corner. Accumulated chunk-wise through rank-k updates.
inline std::vector<double> probe_spin_sums(const std::vector<double>& u, int n) {
    const std::size_t cols = (std::size_t)n + 1;
    std::vector<double> gram(cols * cols, 0.0);
    const std::uint64_t dim = (std::uint64_t)u.size();
    const std::uint64_t chunk = std::min<std::uint64_t>(dim, 8192);
    std::vector<double> rows(chunk * cols);
    for (std::uint64_t z0 = 0; z0 < dim; z0 += chunk) {
        const std::uint64_t count = std::min<std::uint64_t>(chunk, dim - z0);
        for (std::uint64_t r = 0; r < count; ++r) {
            const std::uint64_t z = z0 + r;
            const double mag = std::abs(u[z]);
            double* row = &rows[(std::size_t)r * cols];
            for (int i = 0; i < n; ++i) row[(std::size_t)i] = (z >> i & 1) ? mag : -mag;
            row[(std::size_t)n] = mag;
        }
        cblas_dsyrk(CblasRowMajor, CblasUpper, CblasTrans, (blasint)cols, (blasint)count, 1.0, rows.data(),
                    (blasint)cols, 1.0, gram.data(), (blasint)cols);
    }
    return gram;
}

/// Normalized correlation matrix from accumulated spin sums.
inline CorrelationMatrix correlations_from_sums(const std::vector<double>& gram, int n) {
    const std::size_t cols = (std::size_t)n + 1;
    const double weight = gram[(std::size_t)n * cols + (std::size_t)n];
    CorrelationMatrix c;
    c.n = n;
    c.values.assign((std::size_t)n * (std::size_t)n, 0.0);
    c.singles.assign((std::size_t)n, 0.0);
    for (int i = 0; i < n; ++i) {
        c.singles[(std::size_t)i] = gram[(std::size_t)i * cols + (std::size_t)n] / weight;
        c.values[(std::size_t)i * (std::size_t)n + (std::size_t)i] = 1.0;
        for (int j = i + 1; j < n; ++j) {
            const double value = gram[(std::size_t)i * cols + (std::size_t)j] / weight;
            c.values[(std::size_t)i * (std::size_t)n + (std::size_t)j] = value;
            c.values[(std::size_t)j * (std::size_t)n + (std::size_t)i] = value;
        }
    }
    return c;
}

} // namespace detail

/// Estimates Tr(O e^{-βH}) / Tr(e^{-βH}) for the diagonal observables from
/// num_probes random-probe Krylov expansions of e^{-βH/2}. Deterministic for
/// a fixed seed; probes evaluate independently and may run in parallel.
inline StochasticThermalResult thermal_stochastic(const IsingInstance& inst, double s, const Schedule& sched,
                                                  const StochasticParams& params) {
    if (inst.n > kStochasticCap)
        throw std::invalid_argument("thermal_stochastic: n capped at " + std::to_string(kStochasticCap));
    if (params.num_probes < 2) throw std::invalid_argument("thermal_stochastic: num_probes must be >= 2");
    if (params.krylov_dim < 20) throw std::invalid_argument("thermal_stochastic: krylov_dim must be >= 20");

    const std::uint64_t dim = 1ull << inst.n;
    const std::size_t vector_bytes = (std::size_t)dim * sizeof(double);
    const bool store_basis =
        params.variant == KrylovVariant::automatic
            ? ((std::size_t)params.krylov_dim + 3) * vector_bytes <= detail::kBasisBudgetBytes
            : params.variant == KrylovVariant::stored_basis;
    const std::size_t per_probe_bytes = store_basis
                                            ? ((std::size_t)params.krylov_dim + 4) * vector_bytes
                                            : 5 * vector_bytes;
    const std::size_t required = per_probe_bytes + 2 * vector_bytes; // + diagonal and slack
    const std::size_t usable = detail::usable_memory_bytes();
    if (required > usable)
        throw resource_error("thermal_stochastic: n=" + std::to_string(inst.n) + " needs ~" +
                             std::to_string(required >> 30) + " GiB working set (" +
                             std::to_string(vector_bytes >> 20) + " MiB per state vector), above the ~" +
                             std::to_string(usable >> 30) + " GiB available here");

    // Probe-level parallelism already fills the machine; nested BLAS threads
    // would only reshuffle reduction orders.
    openblas_set_num_threads(1);

    HamiltonianAction ham(inst);
    const double a = sched.A(s), b = sched.B(s);
    const auto bounds = ham.spectral_bounds(a, b);
    const double tau = 0.5 * sched.beta();

    struct ProbeSums {
        std::vector<double> gram;
        double error = 0.0;
    };
    std::vector<ProbeSums> probes((std::size_t)params.num_probes);

    const int probe_parallelism =
        (int)std::max<std::size_t>(1, std::min<std::size_t>((std::size_t)worker_threads(),
                                                            usable / (2 * per_probe_bytes)));
    parallel_for((std::size_t)params.num_probes, [&](std::size_t idx) {
        Rng rng(sub_seed(params.seed, idx));
        const double scale = 1.0 / std::sqrt((double)dim);
        std::vector<double> probe(dim);
        for (auto& x : probe) x = rng.sign() * scale;
        auto expv = store_basis
                        ? detail::expv_stored(ham, a, b, tau, bounds.first, probe, params.krylov_dim)
                        : detail::expv_two_pass(ham, a, b, tau, bounds.first, probe, params.krylov_dim);
        probes[idx].gram = detail::probe_spin_sums(expv.vec, inst.n);
        probes[idx].error = expv.error_estimate;
    }, probe_parallelism);

    // Ratio-of-sums estimator: numerators and the partition-function weight
    // are pooled over probes before normalizing, so nonlinear observables
    // (Q2) see the pooled correlations. Standard errors come from
    // leave-one-out jackknife over probes.
    StochasticThermalResult result;
    const std::size_t gram_len = probes.front().gram.size();
    std::vector<double> total(gram_len, 0.0);
    for (const auto& p : probes)
        for (std::size_t i = 0; i < gram_len; ++i) total[i] += p.gram[i];

    result.correlations = detail::correlations_from_sums(total, inst.n);
    const auto full = observables_from_correlations(result.correlations, inst);

    const double r = (double)params.num_probes;
    std::vector<std::array<double, 4>> leave_one((std::size_t)params.num_probes);
    std::vector<double> reduced(gram_len);
    for (std::size_t idx = 0; idx < probes.size(); ++idx) {
        for (std::size_t i = 0; i < gram_len; ++i) reduced[i] = total[i] - probes[idx].gram[i];
        auto obs = observables_from_correlations(detail::correlations_from_sums(reduced, inst.n), inst);
        leave_one[idx] = {obs.energy, obs.magnetization, obs.q2, obs.omega2};
        result.max_expv_error = std::max(result.max_expv_error, probes[idx].error);
    }
    // Jackknife: the leave-one-out spread gives the standard error, and the
    // usual R*full - (R-1)*mean correction removes the O(1/R) bias the ratio
    // estimator picks up when the Gibbs weight concentrates on few states.
    double corrected[4], se[4];
    const double full_vals[4] = {full.energy, full.magnetization, full.q2, full.omega2};
    for (int k = 0; k < 4; ++k) {
        double mean = 0.0;
        for (const auto& row : leave_one) mean += row[(std::size_t)k] / r;
        double ss = 0.0;
        for (const auto& row : leave_one) {
            const double d = row[(std::size_t)k] - mean;
            ss += d * d;
        }
        se[k] = std::sqrt((r - 1.0) / r * ss);
        corrected[k] = r * full_vals[k] - (r - 1.0) * mean;
    }
    result.observables.energy = corrected[0];
    result.observables.magnetization = corrected[1];
    result.observables.q2 = corrected[2];
    result.observables.omega2 = corrected[3];
    result.observables.energy_err = se[0];
    result.observables.magnetization_err = se[1];
    result.observables.q2_err = se[2];
    result.observables.omega2_err = se[3];
    result.converged = result.max_expv_error <= params.convergence_tol;
    return result;
}

} // namespace coising
