#pragma once

#include <filesystem>
#include <vector>

#include "genfinder/branch.hpp"
#include "genfinder/channel.hpp"
#include "genfinder/rational.hpp"
#include "genfinder/sat.hpp"

namespace genfinder {

inline constexpr int kVerifyVarCap = 12;
inline constexpr int kVerifyClauseCap = 8;
/// Dense d^2 x d^2 materialization is refused above this d^2; larger
/// instances are verified through the structurally equivalent block path.
inline constexpr int kDenseDimCap = 6000;

/// Per-variable clause-membership vectors. Coordinates 0..C-1 mark clause
/// membership, C..C+V-1 are one-hot per variable, and the last V coordinates
/// complete the family to mutual orthogonality with equal squared norm N
/// (integer) via the Gram factorization N*I - G = X^T X.
struct ClauseVectors {
    int n = 0;            // C + 2V after completion
    long long norm2 = 0;  // N
    std::vector<RVec> v;
    std::vector<RVec> complement;  // orthogonal complement, each with norm sqrt(N)
    Eigen::MatrixXi encoding;      // exact (C+V) x V prefix, entries 0/1
};

ClauseVectors build_clause_vectors(const SatInstance& inst);

/// The symmetric fill matrix: first C diagonals 1/2, next V diagonals 5/6,
/// everything else the large positive filler, plus one trailing balancing
/// index that makes every column sum equal. Entries are exact rationals with
/// a double mirror.
struct SymmetricFill {
    int n = 0;  // vectors.n + 1
    std::vector<std::vector<Rat>> entries;
    RMat dense;
    Rat column_sum;  // common column sum
    Rat sigma;       // 4 * column_sum
};

SymmetricFill build_S(const SatInstance& inst, const ClauseVectors& vectors, long long s_big);

/// Everything the encoder produces. The coefficient matrices live at the
/// vector level (d = 4n); the generators embed them into the d^2-dimensional
/// transfer space on demand.
struct ReductionBundle {
    SatInstance instance;
    ClauseVectors vectors;  // zero-padded to the balancing coordinate
    SymmetricFill smat;
    long long s_big = 0;
    int filter_retries = 0;
    Rat sigma, k, alpha;
    int n = 0;  // final coordinate count (C + 2V + 1)
    int d = 0;  // 4n
    double default_tol = 0.0;
    RMat Q;                  // d x d, k*I + kron(S, ones4) + clause term
    RMat P;                  // d x d, alpha * (I - ones)
    std::vector<RMat> B;     // one per variable
    double ccp2_margin = 0.0;    // min eig of the compressed diag/offdiag block
    double filter_margin = 0.0;  // worst non-encoding entry over m in {0,1}^V

    /// Q + sum_c m_c B^(c) at the vector level.
    RMat coefficient_matrix(const std::vector<int>& m) const;

    /// Dense generators (throws TooLarge above kDenseDimCap).
    CMat liouvillian(const std::vector<int>& m) const;  // L_m = L0 + sum m_c A^(c)
    CMat liouvillian() const { return liouvillian(std::vector<int>(std::size_t(instance.num_vars), 0)); }
    CMat shift_generator(int c) const;
    BranchFamily constructed_family() const;

    /// E = exp(L0) as a dense snapshot, and its powers e^{L0 t}.
    TransferMatrix snapshot() const;
    SnapshotSeries snapshot_series(const std::vector<double>& times) const;

    /// exp of the coefficient block: the nontrivial part of the snapshot.
    RMat snapshot_block() const;
};

/// Builds the bundle, growing the filler until the worst-case filtering
/// check clears. Throws BalancingFailed if a balancing entry would go
/// negative (not reachable with the default scheme, kept as a guard).
ReductionBundle build_reduction_bundle(const SatInstance& inst);

/// One normalized inequality sum_c coeffs[c] * m_c >= constant read off an
/// encoding coordinate (clause coordinates and the one-hot coordinates of
/// variables that appear in some clause).
struct EncodingInequality {
    std::vector<int> coeffs;  // size V, entries in {-1, 0, +1}
    Rat constant;
    int coordinate = 0;
};

std::vector<EncodingInequality> extract_encoding_inequalities(const ReductionBundle& b);

bool encoding_feasible(const std::vector<EncodingInequality>& ineqs, const std::vector<int>& m);

/// All of {0,1}^V in lexicographic order.
std::vector<std::vector<int>> boolean_box(int v);

struct BranchMargin {
    std::vector<int> m;
    LindbladConditions conditions;
    double closure = 0.0;  // ||exp(L_m) - E||_F
};

struct VerificationReport {
    bool sat_satisfiable = false;
    bool inequalities_feasible = false;
    Verdict quantum_verdict = Verdict::Indeterminate;
    bool agree = false;
    std::vector<bool> sat_assignment;
    std::vector<int> inequality_witness;
    std::vector<int> quantum_witness;
    double worst_branch_closure = 0.0;  // max over m of ||exp(L_m) - E||_F
    double tolerance_used = 0.0;
    bool dense_route = true;
    std::string detail;
    std::vector<BranchMargin> branch_margins;  // per m, lexicographic order
    double snapshot_norm = 1.0;
};

/// Re-threshold a recorded verification at a different tolerance: the
/// margins are tolerance-independent, only the verdicts move.
bool reduction_agrees_at(const VerificationReport& rep, double tol);

/// Three-way cross-check: brute-force SAT, exact-rational inequality
/// feasibility, and the generator conditions on the assembled snapshot with
/// the branch set restricted to {0,1}^V.
VerificationReport verify_reduction(const SatInstance& inst, double tol = 0.0);

struct ClassicalVerificationReport {
    bool sat_satisfiable = false;
    bool classical_feasible = false;
    bool agree = false;
    std::vector<int> witness;
    double tolerance_used = 0.0;
};

/// Classical variant: Q + sum m_c B^(c) must be a valid classical generator
/// for exactly the satisfying assignments.
ClassicalVerificationReport verify_classical_reduction(const SatInstance& inst, double tol = 0.0);

/// kappa * V^-1 * (C + 2V)^-3; the default tolerance for reduction checks.
double default_tolerance(const SatInstance& inst, double kappa = 1e-3);

/// Write manifest plus matrices (S, Q, P, B_c, and when small enough L0,
/// A_c, E) as JSON files under out_dir.
void export_bundle(const ReductionBundle& bundle, const std::filesystem::path& out_dir);

}  // namespace genfinder
