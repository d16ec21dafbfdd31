#include "genfinder/reduction.hpp"

#include <algorithm>
#include <cmath>

#include "genfinder/embed.hpp"
#include "genfinder/snapshot_io.hpp"

namespace genfinder {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

RMat ones4() { return RMat::Ones(4, 4); }

RMat quarter_block(double off) {
    // kron([[1,-1],[-1,1]], [[0,-off],[off,0]])
    RMat k2(2, 2);
    k2 << 1, -1, -1, 1;
    RMat rot(2, 2);
    rot << 0, -off, off, 0;
    return kron(k2, rot);
}

bool variable_used(const SatInstance& inst, int var /*1-based*/) {
    for (const auto& c : inst.clauses)
        for (const int x : c)
            if (x == var) return true;
    return false;
}

}  // namespace

ClauseVectors build_clause_vectors(const SatInstance& inst) {
    const int c_count = int(inst.clauses.size());
    const int v_count = inst.num_vars;
    const int enc = c_count + v_count;

    ClauseVectors out;
    out.encoding = Eigen::MatrixXi::Zero(enc, v_count);
    for (int a = 0; a < c_count; ++a)
        for (const int x : inst.clauses[std::size_t(a)]) out.encoding(a, x - 1) = 1;
    for (int c = 0; c < v_count; ++c) out.encoding(c_count + c, c) = 1;

    // Integer Gram of the encoding prefix.
    Eigen::MatrixXi gram_i = out.encoding.transpose() * out.encoding;
    RMat gram = gram_i.cast<double>();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(gram),
                                                      Eigen::EigenvaluesOnly);
    const double lam_max = es.eigenvalues().maxCoeff();
    const long long big_n = std::llround(std::ceil(lam_max - 1e-9)) + 1;
    out.norm2 = big_n;

    // N*I - G is positive definite; its Cholesky factor supplies the extra
    // coordinates without touching the encoding prefix.
    RMat m = double(big_n) * RMat::Identity(v_count, v_count) - gram;
    Eigen::LLT<Eigen::MatrixXd> llt{Eigen::MatrixXd(m)};
    if (llt.info() != Eigen::Success)
        throw NumericalFailure("build_clause_vectors: Gram completion failed");
    Eigen::MatrixXd lfac = llt.matrixL();

    out.n = enc + v_count;
    for (int c = 0; c < v_count; ++c) {
        RVec v = RVec::Zero(out.n);
        for (int a = 0; a < enc; ++a) v(a) = double(out.encoding(a, c));
        for (int p = 0; p < v_count; ++p) v(enc + p) = lfac(c, p);  // column c of L^T
        out.v.push_back(std::move(v));
    }

    // Orthogonal complement from the full QR of [v_1 ... v_V].
    RMat vmat(out.n, v_count);
    for (int c = 0; c < v_count; ++c) vmat.col(c) = out.v[std::size_t(c)];
    Eigen::HouseholderQR<Eigen::MatrixXd> qr{Eigen::MatrixXd(vmat)};
    Eigen::MatrixXd qfull = qr.householderQ();
    const double scale = std::sqrt(double(big_n));
    for (int j = v_count; j < out.n; ++j) out.complement.push_back(scale * RVec(qfull.col(j)));

    return out;
}

SymmetricFill build_S(const SatInstance& inst, const ClauseVectors& vectors, long long s_big) {
    const int c_count = int(inst.clauses.size());
    const int v_count = inst.num_vars;
    const int pre = vectors.n;

    SymmetricFill out;
    out.n = pre + 1;
    out.entries.assign(std::size_t(out.n), std::vector<Rat>(std::size_t(out.n), Rat(0)));

    auto diag_entry = [&](int a) -> Rat {
        if (a < c_count) return Rat(1, 2);
        if (a < c_count + v_count) return Rat(5, 6);
        return Rat(s_big);
    };

    for (int a = 0; a < pre; ++a)
        for (int b = 0; b < pre; ++b)
            out.entries[std::size_t(a)][std::size_t(b)] = (a == b) ? diag_entry(a) : Rat(s_big);

    // Balancing index: one extra row/column absorbing per-column deficits so
    // every column sums to the same value.
    std::vector<Rat> col_sums(std::size_t(pre), Rat(0));
    Rat max_sum(0);
    for (int b = 0; b < pre; ++b) {
        Rat t(0);
        for (int a = 0; a < pre; ++a) t += out.entries[std::size_t(a)][std::size_t(b)];
        col_sums[std::size_t(b)] = t;
        if (b == 0 || max_sum < t) max_sum = t;
    }
    Rat balance_total(0);
    for (int b = 0; b < pre; ++b) {
        const Rat fill = max_sum - col_sums[std::size_t(b)];
        if (fill < Rat(0))
            throw BalancingFailed("build_S: balancing entry below the filtering floor");
        out.entries[std::size_t(pre)][std::size_t(b)] = fill;
        out.entries[std::size_t(b)][std::size_t(pre)] = fill;
        balance_total += fill;
    }
    const Rat last = max_sum - balance_total;
    if (last < Rat(0)) throw BalancingFailed("build_S: balancing diagonal went negative");
    out.entries[std::size_t(pre)][std::size_t(pre)] = last;

    out.column_sum = max_sum;
    out.sigma = Rat(4) * max_sum;

    out.dense = RMat(out.n, out.n);
    for (int a = 0; a < out.n; ++a)
        for (int b = 0; b < out.n; ++b)
            out.dense(a, b) = out.entries[std::size_t(a)][std::size_t(b)].to_double();
    return out;
}

RMat ReductionBundle::coefficient_matrix(const std::vector<int>& m) const {
    RMat qm = Q;
    for (std::size_t c = 0; c < B.size(); ++c)
        if (m[c] != 0) qm += double(m[c]) * B[c];
    return qm;
}

CMat ReductionBundle::liouvillian(const std::vector<int>& m) const {
    const Eigen::Index dd = Eigen::Index(d) * d;
    if (dd > kDenseDimCap)
        throw TooLarge("reduction: dense generator exceeds the materialization cap");
    const RMat qm = coefficient_matrix(m);
    CMat l = CMat::Zero(dd, dd);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            l(Eigen::Index(i) * d + i, Eigen::Index(j) * d + j) = kTwoPi * qm(i, j);
            if (i != j)
                l(Eigen::Index(i) * d + j, Eigen::Index(i) * d + j) = kTwoPi * P(i, j);
        }
    return l;
}

CMat ReductionBundle::shift_generator(int c) const {
    const Eigen::Index dd = Eigen::Index(d) * d;
    if (dd > kDenseDimCap)
        throw TooLarge("reduction: dense generator exceeds the materialization cap");
    CMat a = CMat::Zero(dd, dd);
    const RMat& b = B[std::size_t(c)];
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j) a(Eigen::Index(i) * d + i, Eigen::Index(j) * d + j) = kTwoPi * b(i, j);
    return a;
}

BranchFamily ReductionBundle::constructed_family() const {
    BranchFamily fam;
    fam.d = d;
    fam.L0 = liouvillian();
    for (int c = 0; c < instance.num_vars; ++c) {
        fam.shifts.push_back(shift_generator(c));
        fam.pair_info.emplace_back(-1, -1);  // pairs come from the construction, not eig
    }
    return fam;
}

RMat ReductionBundle::snapshot_block() const {
    const CMat e = mat_exp((kTwoPi * Q).cast<cxd>());
    return e.real();
}

TransferMatrix ReductionBundle::snapshot() const {
    return make_transfer(d, mat_exp(liouvillian()));
}

SnapshotSeries ReductionBundle::snapshot_series(const std::vector<double>& times) const {
    const CMat l0 = liouvillian();
    std::vector<SeriesEntry> entries;
    for (const double t : times)
        entries.push_back(SeriesEntry{t, make_transfer(d, mat_exp(t * l0))});
    return make_series(std::move(entries));
}

namespace {

struct FilterOutcome {
    bool ok = false;
    double margin = 0.0;
};

// Worst case over m in {0,1}^V of every non-encoding entry of
// Q + sum_c m_c B^(c): per entry, Q_ij + sum_c min(0, B^(c)_ij).
FilterOutcome run_filter(const SatInstance& inst, const ReductionBundle& b) {
    const int c_count = int(inst.clauses.size());
    std::vector<bool> encoding_coord(std::size_t(b.n), false);
    for (int a = 0; a < c_count; ++a) encoding_coord[std::size_t(a)] = true;
    for (int c = 0; c < inst.num_vars; ++c)
        if (variable_used(inst, c + 1)) encoding_coord[std::size_t(c_count + c)] = true;

    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < b.d; ++i)
        for (int j = 0; j < b.d; ++j) {
            if (i == j) continue;
            const int block_row = i / 4, block_col = j / 4;
            const bool black = ((i + j) % 2) != 0;
            if (block_row == block_col && black && encoding_coord[std::size_t(block_row)])
                continue;  // these entries are the SAT constraints
            double worst = b.Q(i, j);
            for (const auto& bc : b.B) worst += std::min(0.0, bc(i, j));
            margin = std::min(margin, worst);
        }
    FilterOutcome out;
    out.margin = margin;
    out.ok = margin >= -1e-9;
    return out;
}

double compressed_block_margin(const ReductionBundle& b) {
    // (I - ww^T)(diag Q + offdiag P)(I - ww^T) on the d-dimensional level.
    const int d = b.d;
    RMat m2 = b.P;
    for (int i = 0; i < d; ++i) m2(i, i) = b.Q(i, i);
    RMat proj = RMat::Identity(d, d) - RMat::Constant(d, d, 1.0 / double(d));
    RMat compressed = proj * m2 * proj;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        Eigen::MatrixXd(0.5 * (compressed + compressed.transpose())), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace

ReductionBundle build_reduction_bundle(const SatInstance& inst) {
    ReductionBundle b;
    b.instance = inst;

    ClauseVectors vectors = build_clause_vectors(inst);
    const int v_count = inst.num_vars;

    long long s_big = int(inst.clauses.size()) + 2;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 60) throw NumericalFailure("build_reduction_bundle: filler growth did not converge");

        b.smat = build_S(inst, vectors, s_big);
        b.s_big = s_big;
        b.n = b.smat.n;
        b.d = 4 * b.n;
        b.sigma = b.smat.sigma;
        b.k = -b.sigma;
        b.alpha = b.sigma + Rat(1);

        // Vectors acquire a zero balancing coordinate; the complement gains
        // the matching unit vector.
        b.vectors = vectors;
        for (auto& v : b.vectors.v) {
            RVec padded = RVec::Zero(b.n);
            padded.head(vectors.n) = v;
            v = std::move(padded);
        }
        for (auto& v : b.vectors.complement) {
            RVec padded = RVec::Zero(b.n);
            padded.head(vectors.n) = v;
            v = std::move(padded);
        }
        RVec balance_axis = RVec::Zero(b.n);
        balance_axis(b.n - 1) = std::sqrt(double(vectors.norm2));
        b.vectors.complement.push_back(std::move(balance_axis));
        b.vectors.n = b.n;

        const RMat j4 = ones4();
        const RMat tq = quarter_block(1.0 / 3.0);
        const RMat tb = -quarter_block(1.0);  // kron(K2, [[0,1],[-1,0]])

        b.Q = b.k.to_double() * RMat::Identity(b.d, b.d) + kron(b.smat.dense, j4);
        b.B.clear();
        for (int c = 0; c < v_count; ++c) {
            const RVec& v = b.vectors.v[std::size_t(c)];
            const RMat outer = v * v.transpose();
            b.Q += kron(outer, tq);
            b.B.push_back(kron(outer, tb));
        }
        const double alpha = b.alpha.to_double();
        b.P = alpha * (RMat::Identity(b.d, b.d) - RMat::Ones(b.d, b.d));

        const FilterOutcome filter = run_filter(inst, b);
        b.filter_margin = filter.margin;
        if (filter.ok) break;
        s_big *= 2;
        b.filter_retries = attempt + 1;
    }

    b.ccp2_margin = compressed_block_margin(b);
    if (b.ccp2_margin < -1e-9)
        throw NumericalFailure("build_reduction_bundle: compressed block lost positivity");

    b.default_tol = default_tolerance(inst);
    return b;
}

std::vector<EncodingInequality> extract_encoding_inequalities(const ReductionBundle& b) {
    const SatInstance& inst = b.instance;
    const int c_count = int(inst.clauses.size());
    const int v_count = inst.num_vars;

    std::vector<EncodingInequality> out;
    for (int a = 0; a < c_count + v_count; ++a) {
        if (a >= c_count && !variable_used(inst, a - c_count + 1)) continue;

        int member_count = 0;
        std::vector<int> members(std::size_t(v_count), 0);
        for (int c = 0; c < v_count; ++c) {
            members[std::size_t(c)] = b.vectors.encoding(a, c);
            member_count += members[std::size_t(c)];
        }
        const Rat s_aa = b.smat.entries[std::size_t(a)][std::size_t(a)];

        for (const int sign : {+1, -1}) {
            EncodingInequality ineq;
            ineq.coordinate = a;
            ineq.coeffs.resize(std::size_t(v_count));
            for (int c = 0; c < v_count; ++c) ineq.coeffs[std::size_t(c)] = sign * members[std::size_t(c)];
            ineq.constant = Rat(sign) * Rat(member_count, 3) - s_aa;
            out.push_back(std::move(ineq));
        }
    }
    return out;
}

bool encoding_feasible(const std::vector<EncodingInequality>& ineqs, const std::vector<int>& m) {
    for (const auto& ineq : ineqs) {
        Rat lhs(0);
        for (std::size_t c = 0; c < ineq.coeffs.size(); ++c)
            lhs += Rat(ineq.coeffs[c]) * Rat(m[c]);
        if (lhs < ineq.constant) return false;
    }
    return true;
}

std::vector<std::vector<int>> boolean_box(int v) {
    std::vector<std::vector<int>> out;
    out.reserve(std::size_t(1) << v);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << v); ++mask) {
        std::vector<int> m(std::size_t(v), 0);
        for (int i = 0; i < v; ++i)
            if (mask & (std::uint64_t(1) << (v - 1 - i))) m[std::size_t(i)] = 1;
        out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

double default_tolerance(const SatInstance& inst, double kappa) {
    const double v = double(std::max(1, inst.num_vars));
    const double span = v * 2.0 + double(inst.clauses.size());
    return kappa / (v * span * span * span);
}

namespace {

struct StructuredOutcome {
    LindbladConditions cond;
    double closure = 0.0;
};

// Conditions and closure evaluated on the block form: the transfer-space
// generator splits into the pair-diagonal block (the coefficient matrix) and
// a diagonal remainder carrying P, and both the reshuffle and the
// exponential respect the split.
StructuredOutcome structured_outcome(const ReductionBundle& b, const std::vector<int>& m,
                                     const RMat& exp_block) {
    const int d = b.d;
    const RMat qm = b.coefficient_matrix(m);

    StructuredOutcome out;
    out.cond.hermiticity_residual = kTwoPi * (b.P - b.P.transpose()).norm();
    out.cond.normalization_residual =
        kTwoPi / std::sqrt(double(d)) * qm.colwise().sum().norm();

    double off_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j) off_min = std::min(off_min, qm(i, j));

    RMat m2 = b.P;
    for (int i = 0; i < d; ++i) m2(i, i) = qm(i, i);
    RMat proj = RMat::Identity(d, d) - RMat::Constant(d, d, 1.0 / double(d));
    RMat compressed = proj * (0.5 * (m2 + m2.transpose())) * proj;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(compressed),
                                                      Eigen::EigenvaluesOnly);
    out.cond.ccp_margin = kTwoPi * std::min(off_min, es.eigenvalues().minCoeff());

    const CMat em = mat_exp((kTwoPi * qm).cast<cxd>());
    out.closure = (em.real() - exp_block).norm();
    return out;
}

}  // namespace

VerificationReport verify_reduction(const SatInstance& inst, double tol) {
    if (inst.num_vars > kVerifyVarCap || int(inst.clauses.size()) > kVerifyClauseCap)
        throw TooLarge("verify_reduction: instance exceeds the documented caps");

    VerificationReport rep;
    const SatResult sat = sat_brute_force(inst);
    rep.sat_satisfiable = sat.satisfiable;
    rep.sat_assignment = sat.assignment;

    ReductionBundle bundle = build_reduction_bundle(inst);
    const double use_tol = tol > 0 ? tol : bundle.default_tol;
    rep.tolerance_used = use_tol;

    const auto ineqs = extract_encoding_inequalities(bundle);
    const auto box = boolean_box(inst.num_vars);

    const bool infra_ok = bundle.filter_margin >= -1e-9 && bundle.ccp2_margin >= -1e-9;
    bool per_m_mismatch = false;
    for (const auto& m : box) {
        const bool feas = infra_ok && encoding_feasible(ineqs, m);
        if (feas && rep.inequality_witness.empty() && !rep.inequalities_feasible) {
            rep.inequalities_feasible = true;
            rep.inequality_witness = m;
        }
        std::vector<bool> as_assignment(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) as_assignment[i] = m[i] != 0;
        if (feas != assignment_satisfies(inst, as_assignment)) per_m_mismatch = true;
    }

    rep.dense_route = Eigen::Index(bundle.d) * bundle.d <= kDenseDimCap;

    if (rep.dense_route) {
        const TransferMatrix e = bundle.snapshot();
        rep.snapshot_norm = e.matrix.norm();
        for (const auto& m : box) {
            const CMat lm = bundle.liouvillian(m);
            BranchMargin bm;
            bm.m = m;
            bm.conditions = check_conditions(lm);
            bm.closure = (mat_exp(lm) - e.matrix).norm();
            rep.branch_margins.push_back(std::move(bm));
        }
    } else {
        const RMat exp_block = bundle.snapshot_block();
        rep.snapshot_norm = exp_block.norm();
        for (const auto& m : box) {
            const StructuredOutcome so = structured_outcome(bundle, m, exp_block);
            rep.branch_margins.push_back(BranchMargin{m, so.cond, so.closure});
        }
    }

    bool quantum_feasible = false;
    bool quantum_near = false;
    const double closure_gate = 10.0 * use_tol * std::max(1.0, rep.snapshot_norm);
    for (const auto& bm : rep.branch_margins) {
        rep.worst_branch_closure = std::max(rep.worst_branch_closure, bm.closure);
        if (bm.conditions.valid(use_tol) && bm.closure <= closure_gate) {
            if (!quantum_feasible) rep.quantum_witness = bm.m;
            quantum_feasible = true;
        } else if (bm.conditions.near_valid(use_tol)) {
            quantum_near = true;
        }
    }
    rep.quantum_verdict = quantum_feasible
                              ? Verdict::Markovian
                              : (quantum_near ? Verdict::Indeterminate : Verdict::NonMarkovian);

    rep.agree = (rep.inequalities_feasible == rep.sat_satisfiable) &&
                (rep.quantum_verdict != Verdict::Indeterminate) &&
                ((rep.quantum_verdict == Verdict::Markovian) == rep.sat_satisfiable);
    if (per_m_mismatch) {
        rep.agree = false;
        rep.detail = "inequality feasibility disagrees with SAT on some assignment";
    }
    return rep;
}

bool reduction_agrees_at(const VerificationReport& rep, double tol) {
    bool feasible = false;
    bool near = false;
    const double closure_gate = 10.0 * tol * std::max(1.0, rep.snapshot_norm);
    for (const auto& bm : rep.branch_margins) {
        if (bm.conditions.valid(tol) && bm.closure <= closure_gate)
            feasible = true;
        else if (bm.conditions.near_valid(tol))
            near = true;
    }
    if (!feasible && near) return false;  // indeterminate band: no agreement claim
    return (feasible == rep.sat_satisfiable) &&
           (rep.inequalities_feasible == rep.sat_satisfiable);
}

ClassicalVerificationReport verify_classical_reduction(const SatInstance& inst, double tol) {
    if (inst.num_vars > kVerifyVarCap || int(inst.clauses.size()) > kVerifyClauseCap)
        throw TooLarge("verify_classical_reduction: instance exceeds the documented caps");

    ClassicalVerificationReport rep;
    const SatResult sat = sat_brute_force(inst);
    rep.sat_satisfiable = sat.satisfiable;

    ReductionBundle bundle = build_reduction_bundle(inst);
    const double use_tol = tol > 0 ? tol : bundle.default_tol;
    rep.tolerance_used = use_tol;

    // check_classical_generator works at the coefficient level: the classical
    // variant reuses Q and B^(c) directly.
    for (const auto& m : boolean_box(inst.num_vars)) {
        ClassicalGeneratorConditions cond = check_classical_generator(bundle.coefficient_matrix(m));
        if (cond.valid(use_tol)) {
            rep.classical_feasible = true;
            rep.witness = m;
            break;
        }
    }
    rep.agree = rep.classical_feasible == rep.sat_satisfiable;
    return rep;
}

void export_bundle(const ReductionBundle& bundle, const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    const bool dense_ok = Eigen::Index(bundle.d) * bundle.d <= kDenseDimCap;

    nlohmann::json manifest;
    manifest["format"] = "bundle-v1";
    nlohmann::json clause_arr = nlohmann::json::array();
    for (const auto& c : bundle.instance.clauses) clause_arr.push_back({c[0], c[1], c[2]});
    manifest["instance"] = {{"num_vars", bundle.instance.num_vars}, {"clauses", clause_arr}};
    manifest["n"] = bundle.n;
    manifest["d"] = bundle.d;
    manifest["vector_norm2"] = bundle.vectors.norm2;
    manifest["s_big"] = bundle.s_big;
    manifest["filter_retries"] = bundle.filter_retries;
    manifest["sigma"] = bundle.sigma.str();
    manifest["k"] = bundle.k.str();
    manifest["alpha"] = bundle.alpha.str();
    manifest["sigma_value"] = bundle.sigma.to_double();
    manifest["default_tolerance"] = bundle.default_tol;
    manifest["filter_margin"] = bundle.filter_margin;
    manifest["ccp2_margin"] = bundle.ccp2_margin;
    manifest["dense_matrices_included"] = dense_ok;

    const SatResult sat = sat_brute_force(bundle.instance);
    manifest["expected_markovian"] = sat.satisfiable;

    auto write_json = [&](const std::string& name, const nlohmann::json& j) {
        atomic_write_file(out_dir / name, j.dump(1));
    };

    write_json("S.json", {{"kind", "real-matrix"}, {"matrix", real_matrix_to_json(bundle.smat.dense)}});
    write_json("Q.json", {{"kind", "real-matrix"}, {"matrix", real_matrix_to_json(bundle.Q)}});
    write_json("P.json", {{"kind", "real-matrix"}, {"matrix", real_matrix_to_json(bundle.P)}});
    for (std::size_t c = 0; c < bundle.B.size(); ++c)
        write_json("B_" + std::to_string(c + 1) + ".json",
                   {{"kind", "real-matrix"}, {"matrix", real_matrix_to_json(bundle.B[c])}});

    if (dense_ok) {
        const TransferMatrix e = bundle.snapshot();
        const CptReport cpt = validate_cpt(e);
        manifest["snapshot_cpt"] = {{"hermiticity_residual", cpt.hermiticity_residual},
                                    {"trace_residual", cpt.trace_residual},
                                    {"choi_min_eigenvalue", cpt.choi_min_eigenvalue},
                                    {"valid", cpt.valid(kDefaultTol)}};
        write_json("E.json", transfer_to_json(e));
        write_json("L0.json", {{"kind", "complex-matrix"},
                               {"matrix", complex_matrix_to_json(bundle.liouvillian())}});
        for (int c = 0; c < bundle.instance.num_vars; ++c)
            write_json("A_" + std::to_string(c + 1) + ".json",
                       {{"kind", "complex-matrix"},
                        {"matrix", complex_matrix_to_json(bundle.shift_generator(c))}});
    }

    write_json("manifest.json", manifest);
}

}  // namespace genfinder
