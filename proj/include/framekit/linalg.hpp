#ifndef FRAMEKIT_LINALG_HPP
#define FRAMEKIT_LINALG_HPP

#include <vector>

#include "framekit/complex_matrix.hpp"

namespace framekit {

// Pinned numerical tolerances. kHermTol and kEigTol are relative to the input
// scale; kRankTol is relative to the largest eigenvalue.
inline constexpr double kHermTol = 1e-9;
inline constexpr double kEigTol = 1e-11;
inline constexpr double kRankTol = 1e-10;
inline constexpr int kMaxJacobiSweeps = 100;

/// Eigensystem of a Hermitian matrix: eigenvalues ascending, eigenvectors as
/// the columns of a unitary matrix, paired by position.
struct Spectrum {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Cyclic Jacobi diagonalization. The input is symmetrized as (A + A*)/2 when
/// its Hermitian defect is within kHermTol * scale, otherwise throws. Each
/// eigenvector's largest-magnitude component is made real positive (first
/// index on ties), which fixes the phase deterministically.
Spectrum hermitian_eig(const ComplexMatrix& a);

/// V diag(lambda^p) V* for p in {-1, -1/2, 1/2}. Eigenvalues below
/// kRankTol * lambda_max are treated as zero; they are an error for the
/// negative powers and contribute zero for p = 1/2.
ComplexMatrix spectral_function(const ComplexMatrix& a, double p);

/// Largest singular value, computed as sqrt of lambda_max(A* A).
double operator_norm(const ComplexMatrix& a);

/// max(max column abs sum, max row abs sum); dominates operator_norm.
double schur_norm_bound(const ComplexMatrix& a);

/// Given an M x N isometry T (columns orthonormal), returns an M x (M - N)
/// matrix whose columns complete T to a unitary. Deterministic: Gram-Schmidt
/// over the canonical basis in index order, skipping vectors whose residual
/// against the current span falls below kRankTol.
ComplexMatrix orthonormal_complement_basis(const ComplexMatrix& t);

/// lambda_min / lambda_max shortcuts (Hermitian input, same symmetrization
/// policy as hermitian_eig).
double lambda_min(const ComplexMatrix& a);
double lambda_max(const ComplexMatrix& a);

} // namespace framekit

#endif
