#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <genfinder/channel.hpp>
#include <genfinder/linalg.hpp>

#include "oracles.hpp"

using namespace genfinder;

namespace {

CMat diag2(cxd a, cxd b) {
    CMat m = CMat::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace

TEST_CASE("eig_decompose rejects a repeated eigenvalue") {
    CHECK_THROWS_AS(eig_decompose(CMat::Identity(2, 2)), DegenerateSpectrum);
}

TEST_CASE("eig_decompose on a diagonal matrix returns the standard basis") {
    const CMat m = diag2(2.0, cxd(0.0, 3.0));
    const EigenSystem sys = eig_decompose(m);
    std::vector<cxd> vals{sys.eigenvalues(0), sys.eigenvalues(1)};
    std::sort(vals.begin(), vals.end(),
              [](cxd x, cxd y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); });
    CHECK(std::abs(vals[0] - cxd(0.0, 3.0)) < 1e-14);
    CHECK(std::abs(vals[1] - cxd(2.0, 0.0)) < 1e-14);
    for (int c = 0; c < 2; ++c) {
        RVec col = sys.right_eigenvectors.col(c).cwiseAbs();
        CHECK(std::abs(col.maxCoeff() - 1.0) < 1e-12);  // standard basis up to phase
    }
}

TEST_CASE("eig_decompose reconstructs a random matrix") {
    const CMat m = oracles::random_complex(4, 11);
    const EigenSystem sys = eig_decompose(m);
    CHECK((sys.reconstruct() - m).norm() <= 1e-10 * m.norm());
}

TEST_CASE("eig_decompose biorthogonality on random well-separated spectra") {
    for (const int n : {4, 9, 16, 20}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const CMat m = oracles::random_complex(n, 1000 * std::uint64_t(n) + seed);
            const EigenSystem sys = eig_decompose(m);
            CHECK(sys.biorthogonality_residual <= 1e-10);
            CHECK((sys.left_eigenvectors * sys.right_eigenvectors - CMat::Identity(n, n)).norm() <=
                  1e-10);
        }
    }
}

TEST_CASE("mat_exp of the zero matrix is the identity") {
    CHECK((mat_exp(CMat::Zero(3, 3)) - CMat::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("mat_exp of a diagonal log") {
    const CMat m = diag2(std::log(2.0), 0.0);
    const CMat e = mat_exp(m);
    CHECK(std::abs(e(0, 0) - 2.0) < 1e-15);
    CHECK(std::abs(e(1, 1) - 1.0) < 1e-15);
    CHECK(std::abs(e(0, 1)) == 0.0);
}

TEST_CASE("mat_exp of a full rotation is the identity (series oracle)") {
    const double two_pi = 6.283185307179586476925286766559;
    CMat m(2, 2);
    m << 0.0, two_pi, -two_pi, 0.0;
    const CMat e = mat_exp(m);
    CHECK((e - CMat::Identity(2, 2)).norm() < 1e-12);
    CHECK((e - oracles::exp_series(m)).norm() < 1e-12);
}

TEST_CASE("mat_exp matches the series oracle on random matrices") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const CMat m = oracles::random_complex(5, seed);
        const CMat a = mat_exp(m);
        const CMat b = oracles::exp_series(m);
        CHECK((a - b).norm() <= 1e-11 * std::max(1.0, a.norm()));
    }
}

TEST_CASE("mat_exp splits structural blocks exactly") {
    // Permuted block-diagonal input: exp must act per component.
    CMat m = CMat::Zero(4, 4);
    m(0, 0) = 0.3;
    m(0, 2) = -0.7;
    m(2, 0) = 0.25;
    m(2, 2) = -0.1;
    m(1, 1) = cxd(0.0, 1.2);
    m(3, 3) = 0.9;
    const CMat full = oracles::exp_series(m);
    const CMat fast = mat_exp(m);
    CHECK((full - fast).norm() < 1e-13);
    CHECK(fast(0, 1) == cxd(0.0, 0.0));  // off-block entries stay exactly zero
    CHECK(fast(1, 3) == cxd(0.0, 0.0));
    CHECK(structural_blocks(m).size() == 3);
}

TEST_CASE("mat_exp overflow cap") {
    CHECK_THROWS_AS(mat_exp(CMat::Constant(2, 2, 1e16)), Overflow);
}

TEST_CASE("mat_log_principal on near-identity diagonals") {
    const CMat l = mat_log_principal(diag2(1.1, 0.9));
    CHECK(std::abs(l(0, 0) - std::log(1.1)) < 1e-14);
    CHECK(std::abs(l(1, 1) - std::log(0.9)) < 1e-14);
}

TEST_CASE("mat_log_principal rejects a negative real eigenvalue") {
    CHECK_THROWS_AS(mat_log_principal(diag2(0.5, -0.8)), LogUndefined);
}

TEST_CASE("mat_log_principal round trip on a random positive-spectrum stochastic matrix") {
    RMat t(3, 3);
    t << 0.8, 0.1, 0.1, 0.1, 0.8, 0.1, 0.1, 0.1, 0.8;
    const CMat m = t.cast<cxd>();
    const CMat l = mat_log_principal(m);
    CHECK((mat_exp(l) - m).norm() <= 1e-9);
}

TEST_CASE("mat_log_principal agrees with inverse scaling-and-squaring") {
    for (std::uint64_t seed = 21; seed <= 24; ++seed) {
        // Shift a random matrix to put its spectrum near 1, away from the cut.
        CMat m = 0.2 * oracles::random_complex(4, seed) + 2.0 * CMat::Identity(4, 4);
        const CMat mine = mat_log_principal(m);
        Eigen::MatrixXcd dense = m;
        const CMat iss = CMat(Eigen::MatrixXcd(dense.log()));
        CHECK((mine - iss).norm() <= 1e-10 * std::max(1.0, iss.norm()));
    }
}

TEST_CASE("mat_log_principal falls back to dense for degenerate log-able input") {
    // Spectrum {2, 2}: the eigen route refuses, the dense route handles it.
    const CMat m = 2.0 * CMat::Identity(2, 2);
    const CMat l = mat_log_principal(m);
    CHECK((l - std::log(2.0) * CMat::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("exp/log round trip property") {
    for (std::uint64_t seed = 31; seed <= 40; ++seed) {
        CMat m = 0.25 * oracles::random_complex(4, seed) + 1.5 * CMat::Identity(4, 4);
        const CMat l = mat_log_principal(m);
        CHECK((mat_exp(l) - m).norm() <= 1e-8 * m.norm());
        // principal branch: imaginary parts in (-pi, pi]
        const EigenSystem sys = eig_decompose(l);
        for (Eigen::Index i = 0; i < sys.eigenvalues.size(); ++i) {
            CHECK(sys.eigenvalues(i).imag() <= 3.14159265358979 + 1e-9);
            CHECK(sys.eigenvalues(i).imag() > -3.14159265358979 - 1e-9);
        }
    }
}

TEST_CASE("gamma_reshuffle moves a basis element per the double-index rule") {
    // |0,0><1,1| (d = 2) reshuffles to |0,1><0,1|.
    CMat m = CMat::Zero(4, 4);
    m(0 * 2 + 0, 1 * 2 + 1) = 1.0;
    const CMat g = gamma_reshuffle(m);
    CMat expected = CMat::Zero(4, 4);
    expected(0 * 2 + 1, 0 * 2 + 1) = 1.0;
    CHECK((g - expected).norm() == 0.0);
}

TEST_CASE("gamma_reshuffle is an exact involution and linear") {
    const CMat m = oracles::random_complex(9, 55);
    CHECK((gamma_reshuffle(gamma_reshuffle(m)) - m).cwiseAbs().maxCoeff() == 0.0);

    const CMat x = oracles::random_complex(4, 56);
    const CMat y = oracles::random_complex(4, 57);
    const cxd a(1.3, -0.2), b(-0.4, 2.2);
    CHECK((gamma_reshuffle(a * x + b * y) - (a * gamma_reshuffle(x) + b * gamma_reshuffle(y)))
              .norm() < 1e-14);
}

TEST_CASE("gamma_reshuffle of the identity channel is d times the entangled projector") {
    for (const int d : {2, 3}) {
        // Oracle: sum_{i,j} |i,i><j,j| assembled by definition.
        CMat expected = CMat::Zero(d * d, d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) expected(i * d + i, j * d + j) = 1.0;
        const CMat got = gamma_reshuffle(CMat::Identity(d * d, d * d));
        CHECK((got - expected).norm() == 0.0);
        const CVec w = omega_vector(d);
        CHECK((got - double(d) * (w * w.adjoint())).norm() < 1e-14);
        const PsdResult psd = psd_check(got);
        CHECK(psd.positive);
    }
}

TEST_CASE("flip_op permutes a real diagonal and is an involution") {
    CMat m = CMat::Zero(4, 4);
    m(0 * 2 + 1, 0 * 2 + 1) = 0.7;  // entry at pair (0,1)
    const CMat f = flip_op(m);
    CHECK(std::abs(f(1 * 2 + 0, 1 * 2 + 0) - 0.7) < 1e-15);

    const CMat r = oracles::random_complex(9, 77);
    CHECK((flip_op(flip_op(r)) - r).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("psd_check margins") {
    CHECK(psd_check(diag2(2.0, 0.0)).positive);
    CHECK(psd_check(diag2(2.0, 0.0)).margin == doctest::Approx(0.0));
    const PsdResult neg = psd_check(diag2(2.0, -1.0));
    CHECK_FALSE(neg.positive);
    CHECK(neg.margin == doctest::Approx(-1.0));
}

TEST_CASE("psd_check on a projector complement") {
    const int d = 3;
    RMat w = RMat::Constant(d, d, 1.0 / d);
    CMat m = (RMat::Identity(d, d) - w).cast<cxd>();
    const PsdResult r = psd_check(m);
    CHECK(r.positive);
    CHECK(r.margin == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("psd_check rejects non-Hermitian input") {
    CMat m(2, 2);
    m << 1.0, 2.0, 0.0, 1.0;
    CHECK_THROWS_AS(psd_check(m), NotHermitian);
}

TEST_CASE("blockwise minimum eigenvalue matches the dense answer") {
    // Random Hermitian, then zero out couplings to split components.
    CMat m = oracles::random_complex(6, 91);
    m = 0.5 * (m + m.adjoint());
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if ((i < 3) != (j < 3)) m(i, j) = 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es{Eigen::MatrixXcd(m)};
    CHECK(min_hermitian_eigenvalue(m) == doctest::Approx(es.eigenvalues().minCoeff()));
}
