#pragma once

#include <cstdint>
#include <utility>

#include "genfinder/channel.hpp"
#include "genfinder/report.hpp"

namespace genfinder {

/// All logarithm branches of a snapshot that keep the Gamma-reshuffle
/// Hermitian: L_m = L0 + sum_c m_c * shifts[c] over integer vectors m. One
/// shift per unordered conjugate pair of nonreal eigenvalues, built from the
/// spectral projector P_c as 2*pi*i*(P_c - F(P_c)); its eigenvalues are
/// {0, +-2*pi*i}. Real positive eigenvalues get no shift.
struct BranchFamily {
    int d = 0;  // Hilbert dimension
    CMat L0;    // principal logarithm
    std::vector<CMat> shifts;
    std::vector<std::pair<int, int>> pair_info;  // eigenvalue indices (plus, minus)
};

BranchFamily build_branch_family(const TransferMatrix& e, double tol = kDefaultTol);

/// Residuals of conditions (i)-(iii) for a candidate generator. Thresholds
/// are the caller's business (LindbladConditions::valid).
LindbladConditions check_conditions(const CMat& l);

/// Transfer matrix of a random generator in canonical dissipative form:
/// commutator with a random Hermitian H plus a dissipator with a random PSD
/// coefficient matrix over the traceless Hermitian basis. Scaled so the
/// spectrum stays within the principal branch. Deterministic per seed.
CMat sample_lindblad(int d, std::uint64_t seed);

/// Orthonormal traceless Hermitian operator basis (generalized Gell-Mann),
/// d^2 - 1 matrices.
std::vector<CMat> traceless_operator_basis(int d);

/// Transfer matrix of i[rho, H] + sum_{ab} G_ab (F_a rho F_b^dag - 1/2 {F_b^dag F_a, rho}).
CMat lindblad_transfer(const CMat& hamiltonian, const CMat& coupling,
                       const std::vector<CMat>& basis_ops);

/// Decide whether the snapshot has a valid generator among the branches with
/// integer shifts in [-branch_bound, branch_bound]^pairs. Enumeration is
/// lexicographic from the most negative corner; the first feasible branch is
/// the witness. NonMarkovian means every branch in the box violated a
/// condition by more than 10*tol ("non-Markovian within the searched bound").
GeneratorReport decide_markovian(const TransferMatrix& e, double tol = kDefaultTol,
                                 int branch_bound = kDefaultBranchBound);

/// Same decision loop over an explicit family and candidate list. Used where
/// the searched branch set is known a priori (reduction verification). Does
/// not require the snapshot to validate as CPT.
GeneratorReport decide_over_family(const TransferMatrix& e, const BranchFamily& family,
                                   const std::vector<std::vector<int>>& candidates, double tol);

struct LindbladDecomposition {
    CMat hamiltonian;            // d x d Hermitian, traceless gauge
    CMat coupling;               // (d^2-1) x (d^2-1) PSD coefficient matrix
    std::vector<CMat> basis_ops; // traceless operator basis used
    double reassembly_residual = 0.0;
};

/// Split a valid generator into Hamiltonian and dissipative parts. The
/// coupling matrix is the compression of Herm(L^Gamma) onto the traceless
/// operator basis; the contract is behavioral: reassembling from the parts
/// reproduces the input within 10*tol.
LindbladDecomposition decompose_lindblad(const CMat& l, double tol = kDefaultTol);

/// Fit one generator to a whole series: branch candidates come from the
/// earliest snapshot (L = L_m / t_1), and a candidate is accepted only if
/// ||exp(t_k L) - E_k||_F <= tol for every snapshot.
GeneratorReport fit_generator_series(const SnapshotSeries& s, double tol = kDefaultTol,
                                     int branch_bound = kDefaultBranchBound);

}  // namespace genfinder
