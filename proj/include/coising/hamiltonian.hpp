#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "coising/detail/lapack.hpp"
#include "coising/errors.hpp"
#include "coising/instance.hpp"
#include "coising/rng.hpp"
#include "coising/schedule.hpp"

namespace coising {

/// Matrix-free action of H(s) = A(s)·Σ_i σ_x^i + B(s)·diag(E_p) in the
/// computational basis. Bit i of a basis index z encodes σ_z^i = ±1 (set bit
/// means spin up). The classical diagonal is precomputed once per instance
/// and shared across all s values.
class HamiltonianAction {
  public:
    explicit HamiltonianAction(const IsingInstance& inst) : n_(inst.n), dim_(1ull << inst.n) {
        if (inst.n < 1 || inst.n > 33) throw std::invalid_argument("HamiltonianAction: n must be in [1, 33]");
        if ((std::size_t)inst.fields.size() != (std::size_t)inst.n)
            throw std::invalid_argument("HamiltonianAction: field count != n");
        diag_.resize(dim_);
        build_diagonal(inst);
    }

    int n() const { return n_; }
    std::uint64_t dim() const { return dim_; }
    const std::vector<double>& classical_diagonal() const { return diag_; }

    /// out = (A·H_d + B·H_p) v. Blocked so low-bit flips read cache-resident
    /// data and each high-bit flip becomes one streaming pass over a block
    /// pair. The low-bit sum is fused into a single pass per block.
    void apply(double a, double b, const double* v, double* out) const {
        const std::uint64_t dim = dim_;
        const int block_bits = std::min(n_, 15);
        const std::uint64_t block = 1ull << block_bits;
        for (std::uint64_t base = 0; base < dim; base += block) {
            double* o = out + base;
            const double* src = v + base;
            const double* d = diag_.data() + base;
            for (std::uint64_t i = 0; i < block; ++i) {
                double flips = 0.0;
                for (int bit = 0; bit < block_bits; ++bit) flips += src[i ^ (1ull << bit)];
                o[i] = b * d[i] * src[i] + a * flips;
            }
            int bit = block_bits;
            for (; bit + 1 < n_; bit += 2) {
                const double* far1 = v + (base ^ (1ull << bit));
                const double* far2 = v + (base ^ (1ull << (bit + 1)));
                for (std::uint64_t i = 0; i < block; ++i) o[i] += a * (far1[i] + far2[i]);
            }
            for (; bit < n_; ++bit) {
                const double* far = v + (base ^ (1ull << bit));
                for (std::uint64_t i = 0; i < block; ++i) o[i] += a * far[i];
            }
        }
    }

    /// Outer bounds on the spectrum of A·H_d + B·H_p: Lanczos Ritz extremes
    /// (inflated) intersected with the Gershgorin interval.
    std::pair<double, double> spectral_bounds(double a, double b) const {
        double dmin = diag_[0], dmax = diag_[0];
        for (double d : diag_) {
            dmin = std::min(dmin, d);
            dmax = std::max(dmax, d);
        }
        const double gersh_lo = b * dmin - std::abs(a) * n_;
        const double gersh_hi = b * dmax + std::abs(a) * n_;
        if (a == 0.0) return {b * dmin, b * dmax}; // diagonal matrix, bounds exact

        // Extremal Ritz values converge in tens of iterations; large state
        // vectors get a shorter run since each sweep costs a memory pass.
        const int m = (int)std::min<std::uint64_t>(dim_, dim_ > (1ull << 20) ? 90 : 150);
        std::vector<double> alpha, beta;
        std::vector<double> prev(dim_, 0.0), cur(dim_), next(dim_);
        Rng rng(0x5eedb0a7c0151ull);
        double norm = 0;
        for (auto& x : cur) {
            x = rng.real01() - 0.5;
            norm += x * x;
        }
        norm = std::sqrt(norm);
        for (auto& x : cur) x /= norm;
        double beta_prev = 0.0;
        for (int j = 0; j < m; ++j) {
            apply(a, b, cur.data(), next.data());
            double alpha_j = 0;
            for (std::uint64_t z = 0; z < dim_; ++z) alpha_j += cur[z] * next[z];
            alpha.push_back(alpha_j);
            double beta_j = 0;
            for (std::uint64_t z = 0; z < dim_; ++z) {
                next[z] -= alpha_j * cur[z] + beta_prev * prev[z];
                beta_j += next[z] * next[z];
            }
            beta_j = std::sqrt(beta_j);
            if (j + 1 == m || beta_j < 1e-12) break;
            beta.push_back(beta_j);
            for (std::uint64_t z = 0; z < dim_; ++z) {
                prev[z] = cur[z];
                cur[z] = next[z] / beta_j;
            }
            beta_prev = beta_j;
        }
        std::vector<double> offdiag(beta.begin(), beta.begin() + (long)(alpha.size() - 1));
        detail::tridiag_eig(alpha, offdiag, nullptr);
        const double spread = alpha.back() - alpha.front();
        const double inflate = 1e-4 * spread + 1e-12;
        return {std::max(gersh_lo, alpha.front() - inflate), std::min(gersh_hi, alpha.back() + inflate)};
    }

  private:
    void build_diagonal(const IsingInstance& inst) {
        // Gray sweep: one spin flip per step, O(degree) diagonal update.
        std::vector<std::vector<int>> adj((std::size_t)n_);
        std::vector<double> jmat((std::size_t)n_ * (std::size_t)n_, 0.0);
        for (auto [i, j, jij] : inst.couplings) {
            if (i < 1 || j > n_ || i >= j) throw std::invalid_argument("HamiltonianAction: bad coupling pair");
            adj[(std::size_t)i - 1].push_back(j - 1);
            adj[(std::size_t)j - 1].push_back(i - 1);
            jmat[(std::size_t)(i - 1) * (std::size_t)n_ + (std::size_t)(j - 1)] = jij;
            jmat[(std::size_t)(j - 1) * (std::size_t)n_ + (std::size_t)(i - 1)] = jij;
        }
        std::vector<int> spins((std::size_t)n_, -1);
        double e = 0;
        for (auto [i, j, jij] : inst.couplings) e += jij; // all spins down: s_i s_j = +1
        for (double h : inst.fields) e -= h;
        std::uint64_t z = 0;
        diag_[0] = e;
        for (std::uint64_t step = 1; step < dim_; ++step) {
            const int v = std::countr_zero(step);
            const int flipped = -spins[(std::size_t)v];
            spins[(std::size_t)v] = flipped;
            double nbr = 0;
            for (int u : adj[(std::size_t)v]) nbr += jmat[(std::size_t)v * (std::size_t)n_ + (std::size_t)u] *
                                                     spins[(std::size_t)u];
            e += 2.0 * flipped * nbr + 2.0 * flipped * inst.fields[(std::size_t)v];
            z ^= (1ull << v);
            diag_[z] = e;
        }
    }

    int n_;
    std::uint64_t dim_;
    std::vector<double> diag_;
};

/// H(s)·v for one state vector; the operation-level wrapper around the
/// cached-diagonal engine.
inline std::vector<double> apply_hamiltonian(const IsingInstance& inst, double s, const Schedule& sched,
                                             const std::vector<double>& v) {
    HamiltonianAction ham(inst);
    if (v.size() != ham.dim())
        throw std::invalid_argument("apply_hamiltonian: vector length " + std::to_string(v.size()) +
                                    " != 2^n = " + std::to_string(ham.dim()));
    std::vector<double> out(v.size());
    ham.apply(sched.A(s), sched.B(s), v.data(), out.data());
    return out;
}

} // namespace coising
