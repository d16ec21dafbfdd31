#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "genfinder/errors.hpp"

namespace genfinder {

using cxd = std::complex<double>;
// Storage is row-major throughout; serialized layouts depend on it.
using CMat = Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-8;       // validation / decision default
inline constexpr double kDegeneracyTol = 1e-8;    // relative eigenvalue separation
inline constexpr double kExpNormCap = 1e15;       // mat_exp rejects matrices above this 1-norm
inline constexpr int kDefaultBranchBound = 2;

/// Spectral decomposition of a general (diagonalizable) complex matrix.
/// right_eigenvectors holds kets as columns, left_eigenvectors holds the
/// biorthogonal bras as rows: left * right = I and
/// M = right * diag(eigenvalues) * left.
struct EigenSystem {
    CVec eigenvalues;
    CMat right_eigenvectors;
    CMat left_eigenvectors;
    double biorthogonality_residual = 0.0;

    CMat reconstruct() const;
};

/// Dense nonsymmetric eigendecomposition (Hessenberg reduction + shifted QR
/// via Eigen's ComplexEigenSolver), with biorthogonal left eigenvectors from
/// the inverse of the eigenvector matrix.
///
/// Throws DegenerateSpectrum when two eigenvalues sit closer than
/// tol * spectral_radius, NonDiagonalizable when the eigenbasis cannot be
/// inverted to working accuracy.
EigenSystem eig_decompose(const CMat& m, double tol = kDegeneracyTol);

/// Matrix exponential, scaling-and-squaring with Pade approximation of
/// order 13 (Eigen's MatrixFunctions). The matrix is first split into its
/// structurally decoupled blocks (connected components of the exact nonzero
/// pattern), which the exponential preserves.
CMat mat_exp(const CMat& m);

/// Principal branch of the matrix logarithm: eigenvalues of the result have
/// imaginary parts in (-pi, pi]. Primary route is eigendecomposition-based;
/// inputs with degenerate spectrum fall back to inverse scaling-and-squaring
/// (Eigen's MatrixFunctions). Both routes are cross-validated in the tests.
/// Throws LogUndefined if an eigenvalue lies within tol of (-inf, 0].
CMat mat_log_principal(const CMat& m, double tol = kDefaultTol);

/// Index reshuffle (M^G)_{(i,k),(j,l)} = M_{(i,j),(k,l)} on a d^2 x d^2
/// matrix. Pure index permutation; an exact involution.
CMat gamma_reshuffle(const CMat& m);

/// Antilinear flip F(X)_{(a,b),(c,d)} = conj(X_{(b,a),(d,c)}). A transfer
/// matrix is invariant under F exactly when it represents a
/// Hermiticity-preserving map. Exact involution.
CMat flip_op(const CMat& m);

struct PsdResult {
    bool positive = false;
    double margin = 0.0;  // smallest eigenvalue of the Hermitian part
};

/// Positive-semidefiniteness with tolerance: requires the input Hermitian
/// within tol (relative to its norm), then reports the smallest eigenvalue
/// of the Hermitian part. positive <=> margin >= -tol.
PsdResult psd_check(const CMat& m, double tol = kDefaultTol);

/// Connected components of the symmetrized exact-nonzero pattern. Entries
/// equal to 0.0 in both components are structural zeros; anything else links
/// its row and column indices.
std::vector<std::vector<Eigen::Index>> structural_blocks(const CMat& m);

/// Smallest eigenvalue of a Hermitian matrix, computed blockwise over its
/// structural components.
double min_hermitian_eigenvalue(const CMat& herm);

/// Frobenius distance to the nearest Hermitian matrix scale, used by the
/// validation reports: ||M - M^dagger||_F.
double hermiticity_defect(const CMat& m);

/// Kronecker product with row-major pair indexing:
/// (A (x) B)_{(i,p),(k,q)} = A_{i,k} B_{p,q}.
CMat kron(const CMat& a, const CMat& b);
RMat kron(const RMat& a, const RMat& b);

}  // namespace genfinder
