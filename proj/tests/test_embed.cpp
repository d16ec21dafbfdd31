#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <genfinder/embed.hpp>

#include "oracles.hpp"

using namespace genfinder;

namespace {

RMat two_state(double a, double b) {
    RMat t(2, 2);
    t << 1.0 - a, b, a, 1.0 - b;
    return t;
}

}  // namespace

TEST_CASE("classical generator conditions on hand examples") {
    RMat good(2, 2);
    good << -1.0, 2.0, 1.0, -2.0;
    CHECK(check_classical_generator(good).valid(1e-10));

    RMat bad(2, 2);
    bad << -1.0, -0.1, 1.0, 0.1;
    const ClassicalGeneratorConditions c = check_classical_generator(bad);
    CHECK_FALSE(c.valid(1e-8));
    CHECK(c.offdiag_min == doctest::Approx(-0.1));
}

TEST_CASE("the closed-form 2x2 logarithm is a valid generator") {
    // L = mu/(a+b) [[-a, b],[a, -b]] with mu = -log(1-a-b)
    const double a = 0.1, b = 0.2;
    const double mu = -std::log(1.0 - a - b);
    RMat l(2, 2);
    l << -a, b, a, -b;
    l *= mu / (a + b);
    CHECK(check_classical_generator(l).valid(1e-12));
    CHECK((mat_exp(l.cast<cxd>()).real() - two_state(a, b)).norm() <= 1e-12);
}

TEST_CASE("decide_embeddable on the canonical 2x2 examples") {
    const GeneratorReport yes = decide_embeddable(make_stochastic(two_state(0.1, 0.2)));
    CHECK(yes.verdict == Verdict::Markovian);
    // witness matches the closed form
    const double mu = -std::log(0.7);
    RMat expected(2, 2);
    expected << -0.1, 0.2, 0.1, -0.2;
    expected *= mu / 0.3;
    CHECK((yes.witness_L->real() - expected).norm() <= 1e-9);

    const GeneratorReport no = decide_embeddable(make_stochastic(two_state(0.9, 0.9)));
    CHECK(no.verdict == Verdict::NonMarkovian);
    CHECK(no.cause == DecisionCause::LogUndefined);

    const GeneratorReport id = decide_embeddable(make_stochastic(RMat::Identity(2, 2)));
    CHECK(id.verdict == Verdict::Markovian);
    CHECK(id.witness_L->norm() == 0.0);
}

TEST_CASE("decide_embeddable rejects non-stochastic input") {
    RMat bad(2, 2);
    bad << 0.9, 0.2, 0.2, 0.8;
    CHECK_THROWS_AS(decide_embeddable(make_stochastic(bad)), InvalidSnapshot);
}

TEST_CASE("2x2 oracle agreement on seeded random matrices") {
    const double tol = 1e-8;
    int embeddable = 0, nonembeddable = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        double a = 0.0, b = 0.0;
        const RMat t = oracles::random_stochastic_2x2(seed, a, b);
        if (a + b <= 1e-3) continue;
        const double det = 1.0 - a - b;
        if (std::abs(det) <= tol) continue;  // gray band
        const GeneratorReport rep = decide_embeddable(make_stochastic(t), tol);
        if (det > 0) {
            CHECK(rep.verdict == Verdict::Markovian);
            ++embeddable;
        } else {
            CHECK(rep.verdict == Verdict::NonMarkovian);
            ++nonembeddable;
        }
    }
    CHECK(embeddable > 50);
    CHECK(nonembeddable > 50);
}

TEST_CASE("witnesses stay real and reproduce the snapshot") {
    for (std::uint64_t seed = 400; seed < 430; ++seed) {
        double a = 0.0, b = 0.0;
        const RMat t = oracles::random_stochastic_2x2(seed, a, b);
        if (1.0 - a - b <= 1e-3) continue;
        const GeneratorReport rep = decide_embeddable(make_stochastic(t));
        REQUIRE(rep.verdict == Verdict::Markovian);
        CHECK(rep.witness_L->imag().norm() <= 1e-9);
        CHECK((mat_exp(*rep.witness_L) - t.cast<cxd>()).norm() <= 1e-7);
    }
}

TEST_CASE("embeddable witnesses generate stochastic evolutions at intermediate times") {
    double a = 0.0, b = 0.0;
    const RMat t = oracles::random_stochastic_2x2(17, a, b);
    REQUIRE(1.0 - a - b > 1e-3);
    const GeneratorReport rep = decide_embeddable(make_stochastic(t));
    REQUIRE(rep.verdict == Verdict::Markovian);
    const RMat l = rep.witness_L->real();
    for (int step = 1; step <= 9; ++step) {
        const double time = 0.1 * step;
        const RMat et = mat_exp((time * l).cast<cxd>()).real();
        CHECK(validate_stochastic(make_stochastic(et)).valid(1e-7));
    }
}

TEST_CASE("a genuinely complex spectrum still yields a real branch family") {
    // 3-state cyclic drift: complex eigenvalue pair, embeddable by design.
    RMat l(3, 3);
    l << -0.6, 0.1, 0.4, 0.5, -0.4, 0.1, 0.1, 0.3, -0.5;
    const RMat t = mat_exp(l.cast<cxd>()).real();
    const GeneratorReport rep = decide_embeddable(make_stochastic(t), 1e-8);
    REQUIRE(rep.verdict == Verdict::Markovian);
    CHECK((rep.witness_L->real() - l).norm() <= 1e-7);
}
