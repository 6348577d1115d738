#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace coising::detail {

/// Chebyshev coefficients of t -> exp(-a(1+t)) on [-1,1], i.e. the scaled
/// Bessel values (2-δ_k0)(-1)^k e^{-a} I_k(a), truncated where the tail drops
/// below `cutoff`. Computed by Miller's backward recurrence, which is stable
/// for all a >= 0 and never forms e^{a} explicitly.
inline std::vector<double> exp_cheb_coeffs(double a, double cutoff = 1e-17) {
    if (a < 1e-12) return {1.0}; // exp(0) up to the cutoff
    const std::size_t start = (std::size_t)(a + 14.0 * std::sqrt(a) + 40.0);
    std::vector<double> scaled(start + 2, 0.0);
    scaled[start + 1] = 0.0;
    scaled[start] = 1e-280;
    for (std::size_t k = start; k > 0; --k) {
        scaled[k - 1] = scaled[k + 1] + (2.0 * (double)k / a) * scaled[k];
        if (scaled[k - 1] > 1e260) {
            for (std::size_t i = k - 1; i < scaled.size(); ++i) scaled[i] *= 1e-260;
        }
    }
    // Normalization: I_0(a) + 2 Σ_{k>=1} I_k(a) = e^{a}.
    double norm = scaled[0];
    for (std::size_t k = 1; k < scaled.size(); ++k) norm += 2.0 * scaled[k];
    std::vector<double> coeffs;
    coeffs.reserve(scaled.size());
    for (std::size_t k = 0; k < scaled.size(); ++k) {
        const double bessel = scaled[k] / norm; // e^{-a} I_k(a)
        const double c = (k == 0 ? 1.0 : 2.0) * ((k % 2) ? -bessel : bessel);
        coeffs.push_back(c);
    }
    std::size_t keep = coeffs.size();
    while (keep > 1 && std::abs(coeffs[keep - 1]) < cutoff && std::abs(coeffs[keep - 2]) < cutoff) --keep;
    coeffs.resize(keep);
    return coeffs;
}

} // namespace coising::detail
