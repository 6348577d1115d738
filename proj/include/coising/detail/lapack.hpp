#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <lapacke.h>

namespace coising::detail {

/// Eigenvalues (and optionally eigenvectors) of a symmetric tridiagonal
/// matrix. On return with vectors, z is column-major m x m.
inline void tridiag_eig(std::vector<double>& diag, std::vector<double>& offdiag, std::vector<double>* z) {
    const lapack_int m = (lapack_int)diag.size();
    if (z) z->assign((std::size_t)m * (std::size_t)m, 0.0);
    lapack_int info = LAPACKE_dstev(LAPACK_COL_MAJOR, z ? 'V' : 'N', m, diag.data(), offdiag.data(),
                                    z ? z->data() : nullptr, m);
    if (info != 0) throw std::runtime_error("LAPACKE_dstev failed, info=" + std::to_string(info));
}

/// Full symmetric eigendecomposition, row-major input. Eigenvectors replace
/// the matrix: component z of eigenvector k lands at a[z*dim + k].
inline void symmetric_eig(std::vector<double>& a, std::vector<double>& eigenvalues, std::size_t dim,
                          bool vectors) {
    eigenvalues.assign(dim, 0.0);
    lapack_int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, vectors ? 'V' : 'N', 'U', (lapack_int)dim, a.data(),
                                     (lapack_int)dim, eigenvalues.data());
    if (info != 0) throw std::runtime_error("LAPACKE_dsyevd failed, info=" + std::to_string(info));
}

} // namespace coising::detail
