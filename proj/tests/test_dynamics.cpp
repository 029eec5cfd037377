#include "test_helpers.hpp"

#include <doctest.h>

using namespace soneuler;
using namespace soneuler::testing;

namespace {

const InertiaSpec kJ4(4, {1.0, 2.0, 4.0, 8.0});

} // namespace

TEST_CASE("hamiltonian: zero, frozen value, trace oracle") {
    CHECK(hamiltonian(kJ4, AntisymMatrix(4)) == 0.0);

    const AntisymMatrix x = CartanElement(4, {1.0, 2.0}).matrix();
    // independent dense-trace computation
    const double oracle = -0.5 * (kJ4.dense() * x.dense() * x.dense()).trace();
    CHECK(oracle == doctest::Approx(25.5).epsilon(1e-15));
    CHECK(hamiltonian(kJ4, x) == doctest::Approx(oracle).epsilon(1e-14));

    std::mt19937_64 rng(10);
    const AntisymMatrix mu = random_antisym(4, rng);
    CHECK(hamiltonian(kJ4, mu) ==
          doctest::Approx(-0.5 * (kJ4.dense() * mu.dense() * mu.dense()).trace()).epsilon(1e-13));
}

TEST_CASE("vector_field: equilibria, Lax form, n=3 closed form") {
    std::mt19937_64 rng(11);
    for (const auto& e : enumerate_equilibria(CartanElement(4, {1.0, 2.0}), kJ4))
        CHECK(vector_field(kJ4, e.point).norm() < 1e-12);

    for (int trial = 0; trial < 20; ++trial) {
        const AntisymMatrix mu = random_antisym(4, rng);
        const AntisymMatrix lax = commutator(mu, angular_velocity(kJ4, mu));
        CHECK((vector_field(kJ4, mu) - lax).norm() < 1e-12 * (1.0 + mu.norm() * mu.norm()));
    }

    // n = 3: [J, mu^2] entrywise, expanded by hand from the 3x3 product
    const InertiaSpec j3(3, {1.0, 2.0, 4.0});
    const AntisymMatrix mu = random_antisym(3, rng);
    const double u = mu(0, 1), v = mu(0, 2), w = mu(1, 2);
    const AntisymMatrix f = vector_field(j3, mu);
    CHECK(f(0, 1) == doctest::Approx(-(j3[0] - j3[1]) * v * w).epsilon(1e-13));
    CHECK(f(0, 2) == doctest::Approx((j3[0] - j3[2]) * u * w).epsilon(1e-13));
    CHECK(f(1, 2) == doctest::Approx(-(j3[1] - j3[2]) * u * v).epsilon(1e-13));
}

TEST_CASE("angular_velocity: entrywise oracle") {
    std::mt19937_64 rng(12);
    CHECK(angular_velocity(kJ4, AntisymMatrix(4)).norm() == 0.0);
    const AntisymMatrix mu = random_antisym(4, rng);
    const AntisymMatrix om = angular_velocity(kJ4, mu);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            CHECK(om(i, j) == doctest::Approx(-(kJ4[i] + kJ4[j]) * mu(i, j)).epsilon(1e-14));
    CHECK((om.dense() + kJ4.dense() * mu.dense() + mu.dense() * kJ4.dense()).norm() < 1e-13);
}

TEST_CASE("manakov_integrals: k=2 reproduces tr(mu^2)") {
    std::mt19937_64 rng(13);
    const AntisymMatrix mu = random_antisym(4, rng);
    const auto mk = manakov_integrals(kJ4, mu, 4);
    REQUIRE(mk.size() == 2 + 3 + 4);
    const double tr2 = (mu.dense() * mu.dense()).trace();
    CHECK(mk[0].power == 2);
    CHECK(mk[0].lambda_degree == 0);
    CHECK(mk[0].value == doctest::Approx(tr2).epsilon(1e-12));
    // lambda^1 coefficient of tr(L^2) is 2 tr(J mu) = 0
    CHECK(std::abs(mk[1].value) < 1e-12);
}

TEST_CASE("integrate: equilibrium stays put; Richardson order check") {
    const AntisymMatrix x = CartanElement(4, {1.0, 2.0}).matrix();
    const Trajectory still = integrate(kJ4, x, 1.0, 1e-2);
    double dev = 0.0;
    for (const auto& s : still.states) dev = std::max(dev, (s - x).norm());
    CHECK(dev < 1e-12 * (1.0 / 1e-2));

    std::mt19937_64 rng(14);
    const AntisymMatrix mu0 = random_antisym(4, rng, 0.5);
    const AntisymMatrix ref = integrate(kJ4, mu0, 2.0, 0.0125 / 8).states.back();
    const double e1 = (integrate(kJ4, mu0, 2.0, 0.1).states.back() - ref).norm();
    const double e2 = (integrate(kJ4, mu0, 2.0, 0.05).states.back() - ref).norm();
    CHECK(e1 / e2 > 12.0);
    CHECK(e1 / e2 < 20.0);
}

TEST_CASE("integrate: conservation and isospectrality") {
    std::mt19937_64 rng(15);
    const AntisymMatrix mu0 = random_antisym(4, rng, 0.8);
    const Trajectory traj = integrate(kJ4, mu0, 2.0, 1e-3);
    const Eigen::VectorXd drift = traj.invariant_drift_relative();
    for (int c = 0; c < drift.size(); ++c) CHECK(drift[c] < 1e-8);

    const auto spec0 = dense_spectrum(traj.states.front().dense());
    double worst = 0.0;
    for (size_t k = 0; k < traj.states.size(); k += 200)
        worst = std::max(worst,
                         spectrum_multiset_distance(dense_spectrum(traj.states[k].dense()), spec0));
    CHECK(worst < 1e-8);
}

TEST_CASE("vector_field is tangent to Casimir level sets") {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 10; ++trial) {
        const AntisymMatrix mu = random_antisym(5, rng);
        const AntisymMatrix f = vector_field(InertiaSpec(5, {1, 2, 4, 8, 16}), mu);
        // pairing with the gradients of tr(mu^2) and tr(mu^4): mu and mu^3
        const Eigen::MatrixXd m = mu.dense();
        CHECK(std::abs(pairing(f, mu)) < 1e-10 * (1.0 + f.norm() * mu.norm()));
        const AntisymMatrix mu3 = AntisymMatrix::project(m * m * m);
        CHECK(std::abs(pairing(f, mu3)) < 1e-10 * (1.0 + f.norm() * mu3.norm()));
    }
}

TEST_CASE("scaling symmetry of the flow") {
    std::mt19937_64 rng(17);
    const AntisymMatrix mu0 = random_antisym(4, rng, 0.6);
    const double t = 1.0;

    // b = 2: b mu(b t) solves the same equation
    const AntisymMatrix big = integrate(kJ4, 2.0 * mu0, t, 5e-4).states.back();
    const AntisymMatrix base = integrate(kJ4, mu0, 2.0 * t, 5e-4).states.back();
    CHECK((big - 2.0 * base).norm() < 1e-7);

    // b = -1: -mu(-t); time reversal realized by negating J
    const InertiaSpec neg(4, {-1.0, -2.0, -4.0, -8.0});
    const AntisymMatrix flip = integrate(kJ4, -1.0 * mu0, t, 5e-4).states.back();
    const AntisymMatrix back = integrate(neg, mu0, t, 5e-4).states.back();
    CHECK((flip + back).norm() < 1e-7);
}

TEST_CASE("integrate: non-finite states are reported") {
    AntisymMatrix bad(4);
    bad.set(0, 1, std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(integrate(kJ4, bad, 0.1, 1e-2), integrator_failure);
    CHECK_THROWS_AS(integrate(kJ4, AntisymMatrix(4), -1.0, 1e-2), std::invalid_argument);
}

TEST_CASE("InertiaSpec: genericity diagnostics") {
    std::string why;
    CHECK_FALSE(InertiaSpec(4, {1.0, -1.0, 2.0, 3.0}).is_generic(&why));
    CHECK(why.find("J_i^2 != J_j^2") != std::string::npos);
    CHECK(InertiaSpec(4, {0.0, 1.0, 2.0, 3.0}).is_generic());
}

TEST_CASE("Trajectory: CSV layout") {
    const Trajectory traj = integrate(kJ4, CartanElement(4, {1.0, 2.0}).matrix(), 0.01, 1e-2);
    std::ostringstream os;
    traj.write_csv(os);
    const std::string header = os.str().substr(0, os.str().find('\n'));
    CHECK(header.find("t,m_1_2,m_1_3,m_1_4,m_2_3,m_2_4,m_3_4") == 0);
    CHECK(header.find("l1,l2,l3,m1,m2,m3") != std::string::npos);
    CHECK(header.find("H") != std::string::npos);
    CHECK(header.find("trL4_lam2") != std::string::npos);
}
