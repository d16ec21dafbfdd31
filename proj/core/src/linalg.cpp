#include "genfinder/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

namespace genfinder {

namespace {

void require_square(const CMat& m, const char* op) {
    if (m.rows() != m.cols())
        throw DimensionMismatch(std::string(op) + ": matrix is not square");
    if (!m.allFinite())
        throw Error(std::string(op) + ": matrix has non-finite entries");
}

int pair_dim(const CMat& m, const char* op) {
    require_square(m, op);
    const auto n = m.rows();
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(n))));
    if (d * d != n)
        throw NotSquareOfSquare(std::string(op) + ": dimension is not a perfect square");
    return static_cast<int>(d);
}

double one_norm(const CMat& m) {
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

// Dense exponential on a single structural block.
CMat dense_exp(const CMat& m) {
    Eigen::MatrixXcd tmp = m;
    Eigen::MatrixXcd e = tmp.exp();
    return CMat(e);
}

CMat dense_log_iss(const CMat& m) {
    Eigen::MatrixXcd tmp = m;
    Eigen::MatrixXcd l = tmp.log();
    return CMat(l);
}

// Gather the principal submatrix on `idx`, apply `fn`, scatter back into
// `out`. Off-block entries of `out` are left untouched.
template <typename Fn>
void on_block(const CMat& m, const std::vector<Eigen::Index>& idx, CMat& out, Fn fn) {
    const auto k = static_cast<Eigen::Index>(idx.size());
    CMat sub(k, k);
    for (Eigen::Index r = 0; r < k; ++r)
        for (Eigen::Index c = 0; c < k; ++c) sub(r, c) = m(idx[r], idx[c]);
    CMat res = fn(sub);
    for (Eigen::Index r = 0; r < k; ++r)
        for (Eigen::Index c = 0; c < k; ++c) out(idx[r], idx[c]) = res(r, c);
}

struct UnionFind {
    std::vector<Eigen::Index> parent;
    explicit UnionFind(Eigen::Index n) : parent(n) {
        std::iota(parent.begin(), parent.end(), Eigen::Index{0});
    }
    Eigen::Index find(Eigen::Index x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(Eigen::Index a, Eigen::Index b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

}  // namespace

CMat EigenSystem::reconstruct() const {
    return right_eigenvectors * eigenvalues.asDiagonal() * left_eigenvectors;
}

EigenSystem eig_decompose(const CMat& m, double tol) {
    require_square(m, "eig_decompose");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(m), true);
    if (solver.info() != Eigen::Success)
        throw NonDiagonalizable("eig_decompose: QR iteration failed to converge");

    EigenSystem sys;
    sys.eigenvalues = solver.eigenvalues();

    const auto n = m.rows();
    double scale = sys.eigenvalues.cwiseAbs().maxCoeff();
    if (scale == 0.0) scale = 1.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (std::abs(sys.eigenvalues(i) - sys.eigenvalues(j)) <= tol * scale)
                throw DegenerateSpectrum("eig_decompose: eigenvalue separation below tolerance");

    Eigen::MatrixXcd right = solver.eigenvectors();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(right);
    Eigen::MatrixXcd left = lu.inverse();
    if (!left.allFinite())
        throw NonDiagonalizable("eig_decompose: eigenvector matrix is singular");

    double residual = (left * right - Eigen::MatrixXcd::Identity(n, n)).norm();
    if (!(residual < 1e-6))
        throw NonDiagonalizable("eig_decompose: biorthogonalization residual too large");

    sys.right_eigenvectors = CMat(right);
    sys.left_eigenvectors = CMat(left);
    sys.biorthogonality_residual = residual;
    return sys;
}

std::vector<std::vector<Eigen::Index>> structural_blocks(const CMat& m) {
    const auto n = m.rows();
    UnionFind uf(n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (m(i, j) != cxd(0.0, 0.0) || m(j, i) != cxd(0.0, 0.0)) uf.unite(i, j);

    std::vector<std::vector<Eigen::Index>> blocks;
    std::vector<Eigen::Index> root_to_block(n, -1);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto r = uf.find(i);
        if (root_to_block[r] < 0) {
            root_to_block[r] = static_cast<Eigen::Index>(blocks.size());
            blocks.emplace_back();
        }
        blocks[root_to_block[r]].push_back(i);
    }
    return blocks;
}

CMat mat_exp(const CMat& m) {
    require_square(m, "mat_exp");
    if (m.rows() == 0) return m;
    if (one_norm(m) > kExpNormCap)
        throw Overflow("mat_exp: matrix 1-norm exceeds cap");

    auto blocks = structural_blocks(m);
    CMat out;
    if (blocks.size() == 1) {
        out = dense_exp(m);
    } else {
        out = CMat::Zero(m.rows(), m.cols());
        for (const auto& idx : blocks) {
            if (idx.size() == 1) {
                out(idx[0], idx[0]) = std::exp(m(idx[0], idx[0]));
            } else {
                on_block(m, idx, out, [](const CMat& sub) { return dense_exp(sub); });
            }
        }
    }
    if (!out.allFinite())
        throw Overflow("mat_exp: result overflowed double precision");
    return out;
}

CMat mat_log_principal(const CMat& m, double tol) {
    require_square(m, "mat_log_principal");

    // Spectrum gate: no eigenvalue on (or within tol of) the closed negative
    // real axis. Schur-based eigenvalues work for degenerate spectra too.
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> vals(Eigen::MatrixXcd(m), false);
    if (vals.info() != Eigen::Success)
        throw NumericalFailure("mat_log_principal: eigenvalue computation failed");
    double scale = vals.eigenvalues().cwiseAbs().maxCoeff();
    if (scale == 0.0) scale = 1.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const cxd lam = vals.eigenvalues()(i);
        const double axis_dist = lam.real() > 0.0 ? std::abs(lam) : std::abs(lam.imag());
        if (axis_dist <= tol * scale)
            throw LogUndefined("mat_log_principal: eigenvalue on the closed negative real axis");
    }

    CMat out;
    try {
        EigenSystem sys = eig_decompose(m);
        CVec logvals(sys.eigenvalues.size());
        for (Eigen::Index i = 0; i < logvals.size(); ++i)
            logvals(i) = std::log(sys.eigenvalues(i));
        out = sys.right_eigenvectors * logvals.asDiagonal() * sys.left_eigenvectors;
    } catch (const DegenerateSpectrum&) {
        out = dense_log_iss(m);
    }

    const double norm_m = m.norm();
    const double round_trip = (mat_exp(out) - m).norm();
    if (!(round_trip <= std::max(tol, 1e-8) * std::max(1.0, norm_m)))
        throw NumericalFailure("mat_log_principal: exp/log round trip failed");
    return out;
}

CMat gamma_reshuffle(const CMat& m) {
    const int d = pair_dim(m, "gamma_reshuffle");
    CMat out(m.rows(), m.cols());
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
            for (int j = 0; j < d; ++j)
                for (int l = 0; l < d; ++l)
                    out(i * d + k, j * d + l) = m(i * d + j, k * d + l);
    return out;
}

CMat flip_op(const CMat& m) {
    const int d = pair_dim(m, "flip_op");
    CMat out(m.rows(), m.cols());
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e)
                    out(a * d + b, c * d + e) = std::conj(m(b * d + a, e * d + c));
    return out;
}

double hermiticity_defect(const CMat& m) {
    return (m - m.adjoint()).norm();
}

double min_hermitian_eigenvalue(const CMat& herm) {
    auto blocks = structural_blocks(herm);
    double min_eig = std::numeric_limits<double>::infinity();
    for (const auto& idx : blocks) {
        if (idx.size() == 1) {
            min_eig = std::min(min_eig, herm(idx[0], idx[0]).real());
            continue;
        }
        const auto k = static_cast<Eigen::Index>(idx.size());
        Eigen::MatrixXcd sub(k, k);
        for (Eigen::Index r = 0; r < k; ++r)
            for (Eigen::Index c = 0; c < k; ++c) sub(r, c) = herm(idx[r], idx[c]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sub, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw NumericalFailure("min_hermitian_eigenvalue: eigensolver failed");
        min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
    return min_eig;
}

PsdResult psd_check(const CMat& m, double tol) {
    require_square(m, "psd_check");
    const double defect = hermiticity_defect(m);
    if (defect > tol * std::max(1.0, m.norm()))
        throw NotHermitian("psd_check: matrix is not Hermitian within tolerance");
    CMat herm = 0.5 * (m + m.adjoint());
    PsdResult res;
    res.margin = min_hermitian_eigenvalue(herm);
    res.positive = res.margin >= -tol;
    return res;
}

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k)
            out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
    return out;
}

RMat kron(const RMat& a, const RMat& b) {
    RMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k)
            out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
    return out;
}

}  // namespace genfinder
