#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <vector>

#include "coising/detail/chebyshev.hpp"
#include "coising/detail/lapack.hpp"
#include "coising/errors.hpp"
#include "coising/hamiltonian.hpp"
#include "coising/instance.hpp"
#include "coising/observables.hpp"
#include "coising/parallel.hpp"
#include "coising/schedule.hpp"

namespace coising {

inline constexpr int kDenseCap = 14;

enum class DensePath {
    automatic,          // eigendecomposition for small n, Chebyshev above
    eigendecomposition, // full dense spectrum, O(8^n)
    chebyshev,          // matrix-free e^{-β(H-λ₀)/2} columns, machine-exact
};

struct DenseThermalResult {
    ObservableSet observables;
    CorrelationMatrix correlations;
    std::vector<double> diagonal; // measurement distribution p(z), sums to 1
};

namespace detail {

/// Gibbs diagonal via full eigendecomposition: p(z) = Σ_k w_k V[z,k]².
inline std::vector<double> gibbs_diagonal_eig(const HamiltonianAction& ham, double a, double b, double beta) {
    const std::size_t dim = ham.dim();
    std::vector<double> h(dim * dim, 0.0);
    for (std::size_t z = 0; z < dim; ++z) {
        h[z * dim + z] = b * ham.classical_diagonal()[z];
        for (int i = 0; i < ham.n(); ++i) h[z * dim + (z ^ (1ull << i))] = a;
    }
    std::vector<double> eigenvalues;
    symmetric_eig(h, eigenvalues, dim, true);
    std::vector<double> weights(dim);
    double zsum = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        weights[k] = std::exp(-beta * (eigenvalues[k] - eigenvalues[0]));
        zsum += weights[k];
    }
    std::vector<double> p(dim, 0.0);
    for (std::size_t z = 0; z < dim; ++z) {
        double acc = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            const double v = h[z * dim + k];
            acc += weights[k] * v * v;
        }
        p[z] = acc / zsum;
    }
    return p;
}

/// Gibbs diagonal without the spectrum: p(z) ∝ ‖e^{-β(H-λlo)/2} e_z‖²,
/// the half-propagator columns evaluated by Chebyshev panels. Positive by
/// construction; exact to the coefficient cutoff.
inline std::vector<double> gibbs_diagonal_chebyshev(const HamiltonianAction& ham, double a, double b,
                                                    double beta) {
    const std::uint64_t dim = ham.dim();
    const int n = ham.n();
    auto [lo, hi] = ham.spectral_bounds(a, b);
    if (hi <= lo) hi = lo + 1e-12;
    const double center = 0.5 * (hi + lo);
    const double radius = 0.5 * (hi - lo);
    const auto coeffs = detail::exp_cheb_coeffs(0.5 * beta * radius);
    const int terms = (int)coeffs.size();

    const std::vector<double>& d0 = ham.classical_diagonal();
    std::vector<double> p(dim, 0.0);

    const std::uint64_t panel = std::min<std::uint64_t>(dim, 64);
    const std::uint64_t blocks = dim / panel;

    parallel_for(blocks, [&](std::size_t blk) {
        const std::uint64_t col0 = (std::uint64_t)blk * panel;
        const std::size_t len = (std::size_t)dim * (std::size_t)panel;
        std::vector<double> b0(len), b1(len, 0.0), b2(len, 0.0);
        // Clenshaw: b_k = 2 Ĥ b_{k+1} - b_{k+2} + c_k X, X = basis columns.
        const double dscale = 1.0 / radius;
        const double ascale = a / radius;
        const double cscale = center / radius;
        auto apply_scaled = [&](const std::vector<double>& in, std::vector<double>& out) {
            for (std::uint64_t z = 0; z < dim; ++z) {
                const double w = (b * d0[z]) * dscale - cscale;
                double* o = &out[(std::size_t)z * panel];
                const double* src = &in[(std::size_t)z * panel];
                for (std::uint64_t c = 0; c < panel; ++c) o[c] = w * src[c];
                for (int i = 0; i < n; ++i) {
                    const double* nb = &in[(std::size_t)(z ^ (1ull << i)) * panel];
                    for (std::uint64_t c = 0; c < panel; ++c) o[c] += ascale * nb[c];
                }
            }
        };
        for (int k = terms - 1; k >= 1; --k) {
            apply_scaled(b1, b0);
            const double ck = coeffs[(std::size_t)k];
            for (std::size_t idx = 0; idx < len; ++idx) b0[idx] = 2.0 * b0[idx] - b2[idx];
            for (std::uint64_t c = 0; c < panel; ++c) b0[(std::size_t)(col0 + c) * panel + c] += ck;
            std::swap(b2, b1);
            std::swap(b1, b0);
        }
        // Closing step: S = c0·X + Ĥ·b1 - b2.
        apply_scaled(b1, b0);
        for (std::size_t idx = 0; idx < len; ++idx) b0[idx] -= b2[idx];
        for (std::uint64_t c = 0; c < panel; ++c) b0[(std::size_t)(col0 + c) * panel + c] += coeffs[0];
        for (std::uint64_t c = 0; c < panel; ++c) {
            double norm_sq = 0.0;
            for (std::uint64_t z = 0; z < dim; ++z) {
                const double y = b0[(std::size_t)z * panel + c];
                norm_sq += y * y;
            }
            p[col0 + c] = norm_sq;
        }
    });

    double zsum = 0.0;
    for (double w : p) zsum += w;
    for (double& w : p) w /= zsum;
    return p;
}

} // namespace detail

/// Exact thermal state of H(s) for n ≤ 14: observables, full correlation
/// matrix, and the diagonal measurement distribution. Deterministic; the two
/// paths agree to machine precision.
inline DenseThermalResult thermal_dense(const IsingInstance& inst, double s, const Schedule& sched,
                                        DensePath path = DensePath::automatic) {
    if (inst.n > kDenseCap)
        throw resource_error("thermal_dense: n=" + std::to_string(inst.n) + " exceeds the dense cap " +
                             std::to_string(kDenseCap) + "; use thermal_stochastic");
    HamiltonianAction ham(inst);
    const double a = sched.A(s), b = sched.B(s);
    if (path == DensePath::automatic) path = inst.n <= 10 ? DensePath::eigendecomposition : DensePath::chebyshev;
    if (path == DensePath::eigendecomposition && inst.n > 13)
        throw resource_error("thermal_dense: eigendecomposition path capped at n=13");

    DenseThermalResult result;
    result.diagonal = path == DensePath::eigendecomposition
                          ? detail::gibbs_diagonal_eig(ham, a, b, sched.beta())
                          : detail::gibbs_diagonal_chebyshev(ham, a, b, sched.beta());
    result.correlations = correlations_from_diagonal(result.diagonal, inst.n);
    result.observables = observables_from_correlations(result.correlations, inst);
    return result;
}

/// All 2^n eigenvalues of H(s), ascending. Supports the spectrum-level
/// invariance checks; capped at n ≤ 12.
inline std::vector<double> dense_spectrum(const IsingInstance& inst, double s, const Schedule& sched) {
    if (inst.n > 12) throw resource_error("dense_spectrum: capped at n=12");
    HamiltonianAction ham(inst);
    const double a = sched.A(s), b = sched.B(s);
    const std::size_t dim = ham.dim();
    std::vector<double> h(dim * dim, 0.0);
    for (std::size_t z = 0; z < dim; ++z) {
        h[z * dim + z] = b * ham.classical_diagonal()[z];
        for (int i = 0; i < ham.n(); ++i) h[z * dim + (z ^ (1ull << i))] = a;
    }
    std::vector<double> eigenvalues;
    detail::symmetric_eig(h, eigenvalues, dim, false);
    return eigenvalues;
}

} // namespace coising
