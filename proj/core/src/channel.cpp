#include "genfinder/channel.hpp"

#include <cmath>

namespace genfinder {

CVec omega_vector(int d) {
    CVec w = CVec::Zero(Eigen::Index(d) * d);
    const double amp = 1.0 / std::sqrt(double(d));
    for (int i = 0; i < d; ++i) w(Eigen::Index(i) * d + i) = amp;
    return w;
}

TransferMatrix make_transfer(int hilbert_dim, CMat matrix) {
    if (hilbert_dim <= 0) throw InvalidSnapshot("transfer matrix: dimension must be positive");
    const auto n = Eigen::Index(hilbert_dim) * hilbert_dim;
    if (matrix.rows() != n || matrix.cols() != n)
        throw InvalidSnapshot("transfer matrix: expected d^2 x d^2 entries");
    if (!matrix.allFinite()) throw InvalidSnapshot("transfer matrix: non-finite entries");
    return TransferMatrix{hilbert_dim, std::move(matrix)};
}

StochasticMatrix make_stochastic(RMat matrix) {
    if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
        throw InvalidSnapshot("stochastic matrix: must be square and nonempty");
    if (!matrix.allFinite()) throw InvalidSnapshot("stochastic matrix: non-finite entries");
    const int d = int(matrix.rows());
    return StochasticMatrix{d, std::move(matrix)};
}

SnapshotSeries make_series(std::vector<SeriesEntry> entries) {
    if (entries.empty()) throw InconsistentSeries("series: needs at least one snapshot");
    const int d = entries.front().snapshot.hilbert_dim;
    double prev = 0.0;
    for (const auto& e : entries) {
        if (e.time <= prev) throw InconsistentSeries("series: times must be strictly increasing");
        if (e.snapshot.hilbert_dim != d)
            throw InconsistentSeries("series: snapshots have mismatched dimensions");
        prev = e.time;
    }
    return SnapshotSeries{std::move(entries)};
}

CptReport validate_cpt(const TransferMatrix& t, double tol) {
    CptReport rep;
    rep.hermiticity_residual = (flip_op(t.matrix) - t.matrix).norm();

    const CVec w = omega_vector(t.hilbert_dim);
    rep.trace_residual = (t.matrix.adjoint() * w - w).norm();

    CMat choi = gamma_reshuffle(t.matrix);
    rep.choi_hermiticity_defect = hermiticity_defect(choi);
    CMat herm = 0.5 * (choi + choi.adjoint());
    rep.choi_min_eigenvalue = min_hermitian_eigenvalue(herm);
    (void)tol;
    return rep;
}

StochasticReport validate_stochastic(const StochasticMatrix& t, double tol) {
    StochasticReport rep;
    rep.column_sum_residual = (t.matrix.colwise().sum().array() - 1.0).abs().maxCoeff();
    rep.min_entry = t.matrix.minCoeff();
    rep.max_entry = t.matrix.maxCoeff();
    (void)tol;
    return rep;
}

CMat apply_map(const TransferMatrix& t, const CMat& rho) {
    const int d = t.hilbert_dim;
    if (rho.rows() != d || rho.cols() != d)
        throw DimensionMismatch("apply_map: state dimension does not match channel");
    CVec x(Eigen::Index(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) x(Eigen::Index(i) * d + j) = rho(i, j);
    CVec y = t.matrix * x;
    CMat out(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out(i, j) = y(Eigen::Index(i) * d + j);
    return out;
}

}  // namespace genfinder
