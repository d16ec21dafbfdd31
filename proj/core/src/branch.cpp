#include "genfinder/branch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "genfinder/rng.hpp"

namespace genfinder {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

int pair_dim_of(const CMat& l) {
    const auto n = l.rows();
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(n))));
    if (d * d != n || l.cols() != n)
        throw NotSquareOfSquare("generator dimension is not a perfect square");
    return int(d);
}

// (I - |w><w|) M (I - |w><w|), computed with rank-one updates in place.
void project_off_omega(CMat& m, const CVec& w) {
    CVec mw = m * w;
    CVec mtw = m.adjoint() * w;
    const cxd wmw = w.dot(mw);
    m.noalias() -= w * mtw.adjoint();
    m.noalias() -= mw * w.adjoint();
    m.noalias() += wmw * (w * w.adjoint());
}

void hermitize_in_place(CMat& m) {
    const auto n = m.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = cxd(m(i, i).real(), 0.0);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const cxd v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
}

double violation(const LindbladConditions& c) {
    return std::max({c.hermiticity_residual, c.normalization_residual,
                     std::max(0.0, -c.ccp_margin)});
}

// Odometer over the integer box [lo, hi]^p in lexicographic order.
class BoxIterator {
public:
    BoxIterator(int p, int lo, int hi) : lo_(lo), hi_(hi), m_(p, lo) {}
    bool next(std::vector<int>& out) {
        if (m_.empty()) {
            if (used_) return false;
            used_ = true;
            out.clear();
            return true;
        }
        if (done_) return false;
        out = m_;
        int i = int(m_.size()) - 1;
        while (i >= 0 && m_[i] == hi_) m_[i--] = lo_;
        if (i < 0)
            done_ = true;
        else
            ++m_[i];
        return true;
    }

private:
    int lo_, hi_;
    std::vector<int> m_;
    bool used_ = false;
    bool done_ = false;
};

}  // namespace

LindbladConditions check_conditions(const CMat& l) {
    const int d = pair_dim_of(l);
    LindbladConditions out;

    CMat g = gamma_reshuffle(l);

    double herm2 = 0.0;
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            const cxd diff = g(i, j) - std::conj(g(j, i));
            herm2 += std::norm(diff);
        }
    out.hermiticity_residual = std::sqrt(herm2);

    const CVec w = omega_vector(d);
    out.normalization_residual = (l.adjoint() * w).norm();

    hermitize_in_place(g);
    project_off_omega(g, w);
    out.ccp_margin = min_hermitian_eigenvalue(g);
    return out;
}

std::vector<CMat> traceless_operator_basis(int d) {
    std::vector<CMat> ops;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            CMat sym = CMat::Zero(d, d);
            sym(j, k) = inv_sqrt2;
            sym(k, j) = inv_sqrt2;
            ops.push_back(sym);
            CMat asym = CMat::Zero(d, d);
            asym(j, k) = cxd(0.0, -inv_sqrt2);
            asym(k, j) = cxd(0.0, inv_sqrt2);
            ops.push_back(asym);
        }
    for (int k = 1; k < d; ++k) {
        CMat diag = CMat::Zero(d, d);
        const double s = 1.0 / std::sqrt(double(k) * (k + 1));
        for (int i = 0; i < k; ++i) diag(i, i) = s;
        diag(k, k) = -double(k) * s;
        ops.push_back(diag);
    }
    return ops;
}

CMat lindblad_transfer(const CMat& hamiltonian, const CMat& coupling,
                       const std::vector<CMat>& basis_ops) {
    const int d = int(hamiltonian.rows());
    const CMat id = CMat::Identity(d, d);
    CMat l = cxd(0.0, 1.0) * (kron(id, hamiltonian.transpose()) - kron(hamiltonian, id));
    const auto k = static_cast<Eigen::Index>(basis_ops.size());
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b) {
            const cxd g = coupling(a, b);
            if (g == cxd(0.0, 0.0)) continue;
            const CMat& fa = basis_ops[a];
            const CMat& fb = basis_ops[b];
            const CMat fbfa = fb.adjoint() * fa;
            l += g * (kron(fa, fb.conjugate()) - 0.5 * kron(fbfa, id) -
                      0.5 * kron(id, fbfa.transpose()));
        }
    return l;
}

CMat sample_lindblad(int d, std::uint64_t seed) {
    if (d < 2) throw DimensionMismatch("sample_lindblad: dimension must be >= 2");
    Rng rng(seed);

    CMat a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = cxd(rng.gaussian(), rng.gaussian());
    CMat h = 0.5 * (a + a.adjoint());
    const double hn = h.norm();
    if (hn > 0) h *= 0.3 / hn;  // keeps the spectrum inside the principal branch

    const int k = d * d - 1;
    CMat b(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) b(i, j) = cxd(rng.gaussian(), rng.gaussian());
    CMat g = b * b.adjoint();
    const double gn = g.norm();
    if (gn > 0) g *= 0.3 / gn;

    return lindblad_transfer(h, g, traceless_operator_basis(d));
}

BranchFamily build_branch_family(const TransferMatrix& e, double tol) {
    BranchFamily fam;
    fam.d = e.hilbert_dim;

    EigenSystem sys = eig_decompose(e.matrix, kDegeneracyTol);
    double scale = sys.eigenvalues.cwiseAbs().maxCoeff();
    if (scale == 0.0) scale = 1.0;
    for (Eigen::Index i = 0; i < sys.eigenvalues.size(); ++i) {
        const cxd lam = sys.eigenvalues(i);
        const double axis_dist = lam.real() > 0.0 ? std::abs(lam) : std::abs(lam.imag());
        if (axis_dist <= tol * scale)
            throw LogUndefined("build_branch_family: eigenvalue on the closed negative real axis");
    }

    CVec logvals(sys.eigenvalues.size());
    for (Eigen::Index i = 0; i < logvals.size(); ++i) logvals(i) = std::log(sys.eigenvalues(i));
    fam.L0 = sys.right_eigenvectors * logvals.asDiagonal() * sys.left_eigenvectors;

    // Conjugate pairs: the degeneracy gate guarantees a genuine pair is
    // separated by more than tol*scale, so |Im| above half that is nonreal.
    const double im_floor = 0.5 * kDegeneracyTol * scale;
    std::vector<Eigen::Index> reps;
    for (Eigen::Index i = 0; i < sys.eigenvalues.size(); ++i)
        if (sys.eigenvalues(i).imag() > im_floor) reps.push_back(i);
    std::sort(reps.begin(), reps.end(), [&](Eigen::Index a, Eigen::Index b) {
        const cxd la = sys.eigenvalues(a), lb = sys.eigenvalues(b);
        if (la.real() != lb.real()) return la.real() < lb.real();
        return la.imag() < lb.imag();
    });

    for (const auto rep : reps) {
        const cxd target = std::conj(sys.eigenvalues(rep));
        Eigen::Index partner = -1;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < sys.eigenvalues.size(); ++j) {
            const double dist = std::abs(sys.eigenvalues(j) - target);
            if (dist < best) {
                best = dist;
                partner = j;
            }
        }
        if (partner < 0 || best > tol * scale)
            throw InvalidSnapshot(
                "build_branch_family: spectrum is not conjugate-symmetric (map is not "
                "Hermiticity-preserving)");
        CMat proj = sys.right_eigenvectors.col(rep) * sys.left_eigenvectors.row(rep);
        fam.shifts.push_back(cxd(0.0, kTwoPi) * (proj - flip_op(proj)));
        fam.pair_info.emplace_back(int(rep), int(partner));
    }
    return fam;
}

namespace {

struct CandidateOutcome {
    bool feasible = false;
    bool near_feasible = false;
    LindbladConditions conditions;
};

GeneratorReport run_decision(const TransferMatrix& e, const BranchFamily& family,
                             const std::vector<std::vector<int>>& candidates, double tol,
                             int branch_bound) {
    GeneratorReport rep;
    rep.branch_bound_used = branch_bound;
    rep.tolerance_used = tol;

    const double closure_tol = 10.0 * tol * std::max(1.0, e.matrix.norm());
    const auto p = family.shifts.size();
    const auto n = e.matrix.rows();

    // Diagonal screen: lambda_min is bounded above by the smallest diagonal
    // entry of the projected Hermitian part, which is linear in m. Cheap way
    // to discard branches that are far from conditionally completely
    // positive without an eigensolve. Only worth the precomputation on small
    // matrices with a large candidate box.
    const bool use_screen = n <= 256 && p > 0 && candidates.size() > 64;
    RVec diag0;
    std::vector<RVec> diag_shift;
    if (use_screen) {
        const CVec w = omega_vector(family.d);
        auto projected_diag = [&](const CMat& l) {
            CMat g = gamma_reshuffle(l);
            hermitize_in_place(g);
            project_off_omega(g, w);
            return RVec(g.diagonal().real());
        };
        diag0 = projected_diag(family.L0);
        for (const auto& a : family.shifts) diag_shift.push_back(projected_diag(a));
    }

    bool saw_near = false;
    double best_violation = std::numeric_limits<double>::infinity();
    LindbladConditions best_conditions;

    for (const auto& m : candidates) {
        if (use_screen) {
            RVec diag = diag0;
            for (std::size_t c = 0; c < p; ++c)
                if (m[c] != 0) diag += double(m[c]) * diag_shift[c];
            if (diag.minCoeff() < -10.0 * tol) continue;  // certainly infeasible
        }

        CMat lm = family.L0;
        for (std::size_t c = 0; c < p; ++c)
            if (m[c] != 0) lm += double(m[c]) * family.shifts[c];

        const LindbladConditions cond = check_conditions(lm);
        if (violation(cond) < best_violation) {
            best_violation = violation(cond);
            best_conditions = cond;
        }
        if (cond.valid(tol)) {
            const double closure = (mat_exp(lm) - e.matrix).norm();
            if (closure <= closure_tol) {
                rep.verdict = Verdict::Markovian;
                rep.witness_L = std::move(lm);
                rep.witness_m = m;
                rep.conditions = cond;
                rep.detail.clear();
                return rep;
            }
            rep.detail = "branch passed the generator conditions but failed the "
                         "exponential round trip";
            saw_near = true;
            continue;
        }
        if (cond.near_valid(tol)) saw_near = true;
    }

    rep.conditions = best_conditions;
    if (saw_near) {
        rep.verdict = Verdict::Indeterminate;
        if (rep.detail.empty()) rep.detail = "best branch inside the weak-membership gray band";
    } else {
        rep.verdict = Verdict::NonMarkovian;
        rep.detail = "every branch in the searched box violates a condition by more than "
                     "10*tol";
    }
    return rep;
}

std::vector<std::vector<int>> integer_box(std::size_t p, int bound) {
    double count = 1.0;
    for (std::size_t i = 0; i < p; ++i) count *= double(2 * bound + 1);
    if (count > 2e6) throw TooLarge("branch search box exceeds the enumeration cap");
    std::vector<std::vector<int>> out;
    out.reserve(std::size_t(count));
    BoxIterator it(int(p), -bound, bound);
    std::vector<int> m;
    while (it.next(m)) out.push_back(m);
    return out;
}

}  // namespace

GeneratorReport decide_over_family(const TransferMatrix& e, const BranchFamily& family,
                                   const std::vector<std::vector<int>>& candidates, double tol) {
    return run_decision(e, family, candidates, tol, 0);
}

GeneratorReport decide_markovian(const TransferMatrix& e, double tol, int branch_bound) {
    GeneratorReport rep;
    rep.branch_bound_used = branch_bound;
    rep.tolerance_used = tol;

    const CptReport cpt = validate_cpt(e, tol);
    if (!cpt.valid(tol))
        throw InvalidSnapshot("decide_markovian: snapshot is not CPT within tolerance");

    const auto n = e.matrix.rows();
    if ((e.matrix - CMat::Identity(n, n)).norm() <= tol * std::max(1.0, e.matrix.norm())) {
        rep.verdict = Verdict::Markovian;
        rep.witness_L = CMat::Zero(n, n);
        rep.witness_m = std::vector<int>{};
        rep.conditions = LindbladConditions{};
        rep.detail = "identity snapshot";
        return rep;
    }

    BranchFamily family;
    try {
        family = build_branch_family(e, tol);
    } catch (const LogUndefined&) {
        rep.verdict = Verdict::NonMarkovian;
        rep.cause = DecisionCause::LogUndefined;
        rep.detail = "eigenvalue on the closed negative real axis: no branch of the "
                     "logarithm is Hermiticity-preserving (equal negative pairs are not "
                     "searched)";
        return rep;
    } catch (const DegenerateSpectrum&) {
        rep.verdict = Verdict::Indeterminate;
        rep.cause = DecisionCause::DegenerateSpectrum;
        rep.detail = "degenerate snapshot spectrum: branch parametrization undefined";
        return rep;
    }

    GeneratorReport out =
        run_decision(e, family, integer_box(family.shifts.size(), branch_bound), tol,
                     branch_bound);
    return out;
}

LindbladDecomposition decompose_lindblad(const CMat& l, double tol) {
    const int d = pair_dim_of(l);
    const LindbladConditions cond = check_conditions(l);
    if (!cond.valid(tol))
        throw NotLindblad("decompose_lindblad: generator fails the validity conditions");

    LindbladDecomposition out;
    out.basis_ops = traceless_operator_basis(d);
    const auto k = static_cast<Eigen::Index>(out.basis_ops.size());

    CMat g = gamma_reshuffle(l);
    hermitize_in_place(g);
    const CVec w = omega_vector(d);
    project_off_omega(g, w);

    // Coupling matrix: compression of the projected block onto the traceless
    // basis (vectorized operators are orthonormal).
    CMat vecs(Eigen::Index(d) * d, k);
    for (Eigen::Index a = 0; a < k; ++a) {
        const CMat& f = out.basis_ops[a];
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) vecs(Eigen::Index(i) * d + j, a) = f(i, j);
    }
    out.coupling = vecs.adjoint() * g * vecs;
    hermitize_in_place(out.coupling);

    // Hamiltonian from the remainder, traceless gauge.
    const CMat id = CMat::Identity(d, d);
    CMat dissipator = CMat::Zero(l.rows(), l.cols());
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b) {
            const cxd c = out.coupling(a, b);
            if (c == cxd(0.0, 0.0)) continue;
            const CMat& fa = out.basis_ops[a];
            const CMat& fb = out.basis_ops[b];
            const CMat fbfa = fb.adjoint() * fa;
            dissipator += c * (kron(fa, fb.conjugate()) - 0.5 * kron(fbfa, id) -
                               0.5 * kron(id, fbfa.transpose()));
        }
    const CMat r = l - dissipator;
    CMat t(d, d);
    for (int i = 0; i < d; ++i)
        for (int kk = 0; kk < d; ++kk) {
            cxd sum = 0.0;
            for (int j = 0; j < d; ++j) sum += r(Eigen::Index(i) * d + j, Eigen::Index(kk) * d + j);
            t(i, kk) = sum;
        }
    CMat h = (cxd(0.0, 1.0) / double(d)) * t;
    h = 0.5 * (h + h.adjoint());
    h -= (h.trace() / double(d)) * id;
    out.hamiltonian = h;

    const CMat reassembled = lindblad_transfer(out.hamiltonian, out.coupling, out.basis_ops);
    out.reassembly_residual = (reassembled - l).norm();
    if (!(out.reassembly_residual <= 10.0 * tol * std::max(1.0, l.norm())))
        throw NotLindblad("decompose_lindblad: reassembly residual exceeds tolerance");
    return out;
}

GeneratorReport fit_generator_series(const SnapshotSeries& s, double tol, int branch_bound) {
    if (s.entries.empty()) throw InconsistentSeries("fit_generator_series: empty series");
    const int d = s.entries.front().snapshot.hilbert_dim;
    for (const auto& e : s.entries)
        if (e.snapshot.hilbert_dim != d)
            throw InconsistentSeries("fit_generator_series: snapshots have mismatched dims");

    GeneratorReport rep;
    rep.branch_bound_used = branch_bound;
    rep.tolerance_used = tol;

    const TransferMatrix& e1 = s.entries.front().snapshot;
    const double t1 = s.entries.front().time;
    const auto n = e1.matrix.rows();

    auto consistency = [&](const CMat& l, std::vector<double>& residuals) {
        residuals.clear();
        double worst = 0.0;
        for (const auto& entry : s.entries) {
            const double r = (mat_exp(entry.time * l) - entry.snapshot.matrix).norm();
            residuals.push_back(r);
            worst = std::max(worst, r);
        }
        return worst;
    };

    std::vector<std::vector<int>> candidates;
    BranchFamily family;
    bool identity_path =
        (e1.matrix - CMat::Identity(n, n)).norm() <= tol * std::max(1.0, e1.matrix.norm());
    if (identity_path) {
        family.d = d;
        family.L0 = CMat::Zero(n, n);
        candidates = {std::vector<int>{}};
    } else {
        try {
            family = build_branch_family(e1, tol);
        } catch (const LogUndefined&) {
            rep.verdict = Verdict::NonMarkovian;
            rep.cause = DecisionCause::LogUndefined;
            rep.detail = "earliest snapshot has an eigenvalue on the closed negative real axis";
            return rep;
        } catch (const DegenerateSpectrum&) {
            rep.verdict = Verdict::Indeterminate;
            rep.cause = DecisionCause::DegenerateSpectrum;
            rep.detail = "earliest snapshot has a degenerate spectrum";
            return rep;
        }
        double count = 1.0;
        for (std::size_t i = 0; i < family.shifts.size(); ++i) count *= double(2 * branch_bound + 1);
        if (count > 2e6) throw TooLarge("branch search box exceeds the enumeration cap");
        BoxIterator it(int(family.shifts.size()), -branch_bound, branch_bound);
        std::vector<int> m;
        while (it.next(m)) candidates.push_back(m);
    }

    bool saw_near = false;
    double best_violation = std::numeric_limits<double>::infinity();
    LindbladConditions best_conditions;
    std::vector<double> residuals;

    for (const auto& m : candidates) {
        CMat lm = family.L0;
        for (std::size_t c = 0; c < family.shifts.size(); ++c)
            if (m[c] != 0) lm += double(m[c]) * family.shifts[c];
        CMat cand = lm / t1;

        const LindbladConditions cond = check_conditions(cand);
        if (violation(cond) < best_violation) {
            best_violation = violation(cond);
            best_conditions = cond;
        }
        if (cond.valid(tol)) {
            const double worst = consistency(cand, residuals);
            if (worst <= tol) {
                rep.verdict = Verdict::Markovian;
                rep.witness_L = std::move(cand);
                rep.witness_m = m;
                rep.conditions = cond;
                rep.snapshot_residuals = residuals;
                return rep;
            }
            if (worst <= 10.0 * tol) saw_near = true;
            rep.cause = DecisionCause::SeriesInconsistent;
            rep.detail = "a valid generator for the earliest snapshot is inconsistent with "
                         "later snapshots";
            continue;
        }
        if (cond.near_valid(tol)) saw_near = true;
    }

    rep.conditions = best_conditions;
    rep.verdict = saw_near ? Verdict::Indeterminate : Verdict::NonMarkovian;
    if (rep.detail.empty())
        rep.detail = "no branch of the earliest snapshot is both a valid generator and "
                     "consistent with the series";
    return rep;
}

}  // namespace genfinder
