#include "test_helpers.hpp"

#include <doctest.h>

using namespace soneuler;
using namespace soneuler::testing;

namespace {

LMState random_lm(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    LMState s;
    for (int i = 0; i < 3; ++i) {
        s.l[i] = gauss(rng);
        s.m[i] = gauss(rng);
    }
    return s;
}

double eps_ijk(int i, int j, int k) {
    return ((i - j) * (j - k) * (k - i)) / 2.0;
}

} // namespace

TEST_CASE("split basis: commuting factors, orthogonality") {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(commutator(lm_basis_l(i), lm_basis_m(j)).norm() == 0.0);
            if (i != j) {
                CHECK(std::abs(pairing(lm_basis_l(i), lm_basis_l(j))) == 0.0);
                CHECK(std::abs(pairing(lm_basis_m(i), lm_basis_m(j))) == 0.0);
            }
        }
    for (int i = 0; i < 3; ++i) {
        CHECK(pairing(lm_basis_l(i), lm_basis_l(i)) == doctest::Approx(2.0));
        CHECK(pairing(lm_basis_m(i), lm_basis_m(i)) == doctest::Approx(2.0));
        CHECK(std::abs(pairing(lm_basis_l(i), lm_basis_m(i))) == 0.0);
    }
}

TEST_CASE("round trip and zero state") {
    std::mt19937_64 rng(30);
    const LMState z = mu_to_lm(AntisymMatrix(4));
    CHECK(z.l.norm() == 0.0);
    CHECK(z.m.norm() == 0.0);
    for (int trial = 0; trial < 20; ++trial) {
        const LMState s = random_lm(rng);
        const LMState back = mu_to_lm(lm_to_mu(s));
        CHECK((back.l - s.l).norm() < 1e-14);
        CHECK((back.m - s.m).norm() < 1e-14);

        const AntisymMatrix mu = random_antisym(4, rng);
        CHECK((lm_to_mu(mu_to_lm(mu)) - mu).norm() < 1e-14);
    }
    CHECK_THROWS_AS(mu_to_lm(AntisymMatrix(5)), std::invalid_argument);
}

TEST_CASE("Cartan elements sit on the aligned equilibrium family") {
    const LMState s = mu_to_lm(CartanElement(4, {1.0, 2.0}).matrix());
    // both components along e3: the family b(a e3, e3)
    CHECK(std::abs(s.l[0]) + std::abs(s.l[1]) < 1e-15);
    CHECK(std::abs(s.m[0]) + std::abs(s.m[1]) < 1e-15);
    CHECK(s.l[2] == doctest::Approx((2.0 - 1.0) / 2.0));
    CHECK(s.m[2] == doctest::Approx((1.0 + 2.0) / 2.0));
}

TEST_CASE("induced brackets have the split structure constants") {
    std::mt19937_64 rng(31);
    const AntisymMatrix mu = random_antisym(4, rng);
    const LMState s = mu_to_lm(mu);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            // gradients of the coordinate functions l_i, m_j
            const AntisymMatrix gl_i = lm_gradient(Eigen::Vector3d::Unit(i), Eigen::Vector3d::Zero());
            const AntisymMatrix gl_j = lm_gradient(Eigen::Vector3d::Unit(j), Eigen::Vector3d::Zero());
            const AntisymMatrix gm_i = lm_gradient(Eigen::Vector3d::Zero(), Eigen::Vector3d::Unit(i));
            const AntisymMatrix gm_j = lm_gradient(Eigen::Vector3d::Zero(), Eigen::Vector3d::Unit(j));
            double expect_l = 0.0, expect_m = 0.0;
            for (int k = 0; k < 3; ++k) {
                expect_l += eps_ijk(i, j, k) * s.l[k];
                expect_m += eps_ijk(i, j, k) * s.m[k];
            }
            CHECK(lie_poisson_bracket(gl_i, gl_j, mu) == doctest::Approx(expect_l).epsilon(1e-12));
            CHECK(lie_poisson_bracket(gm_i, gm_j, mu) == doctest::Approx(expect_m).epsilon(1e-12));
            CHECK(std::abs(lie_poisson_bracket(gl_i, gm_j, mu)) < 1e-14);
        }
}

TEST_CASE("lambda_from_inertia: values, rejection, shift invariance") {
    const LambdaSpec lam = lambda_from_inertia(InertiaSpec(4, {1, 2, 4, 8}));
    CHECK(lam[0] == doctest::Approx(-3.0));
    CHECK(lam[1] == doctest::Approx(5.0));
    CHECK(lam[2] == doctest::Approx(9.0));

    CHECK_THROWS_WITH_AS(lambda_from_inertia(InertiaSpec(4, {0, 1, 2, 3})),
                         doctest::Contains("Lambda_1"), nongeneric_error);

    const LambdaSpec shifted = lambda_from_inertia(InertiaSpec(4, {1 + 5.0, 2 + 5.0, 4 + 5.0, 8 + 5.0}));
    CHECK((shifted.lambda() - lam.lambda()).norm() < 1e-14);
}

TEST_CASE("split Hamiltonians at the aligned equilibrium") {
    const LambdaSpec lam(Eigen::Vector3d(-3, 5, 9));
    const double a = 2.0;
    const LMState eq{a * Eigen::Vector3d::UnitZ(), Eigen::Vector3d::UnitZ()};
    const auto [h, k] = lm_hamiltonians(lam, eq);
    CHECK(h == doctest::Approx(a * lam[2]));
    CHECK(k == doctest::Approx(0.5 * (a * a + 1.0) * lam[2] * lam[2] - a * lam[0] * lam[1]));
}

TEST_CASE("split field: equilibria, Casimirs, energy derivatives") {
    std::mt19937_64 rng(32);
    const LambdaSpec lam = random_generic_lambda(rng);
    const LMState eq{-1.7 * Eigen::Vector3d::UnitZ(), Eigen::Vector3d::UnitZ()};
    const LMState de = lm_vector_field(lam, eq);
    CHECK(de.l.norm() < 1e-15);
    CHECK(de.m.norm() < 1e-15);

    const Eigen::Vector3d lv = lam.lambda();
    const Eigen::Vector3d th = lam.theta();
    for (int trial = 0; trial < 50; ++trial) {
        const LMState s = random_lm(rng);
        const LMState d = lm_vector_field(lam, s);
        // Casimirs |l|^2, |m|^2
        CHECK(std::abs(s.l.dot(d.l)) < 1e-12 * (1.0 + s.l.squaredNorm()));
        CHECK(std::abs(s.m.dot(d.m)) < 1e-12 * (1.0 + s.m.squaredNorm()));
        // chain rule for H and K along the field
        const double dh = lv.cwiseProduct(s.m).dot(d.l) + lv.cwiseProduct(s.l).dot(d.m);
        const Eigen::Vector3d gkl = lv.cwiseAbs2().cwiseProduct(s.l) - th.cwiseProduct(s.m);
        const Eigen::Vector3d gkm = lv.cwiseAbs2().cwiseProduct(s.m) - th.cwiseProduct(s.l);
        const double dk = gkl.dot(d.l) + gkm.dot(d.m);
        CHECK(std::abs(dh) < 1e-12 * (1.0 + std::abs(lm_hamiltonians(lam, s).first)) * 100);
        CHECK(std::abs(dk) < 1e-11 * (1.0 + std::abs(lm_hamiltonians(lam, s).second)) * 100);
    }
}

TEST_CASE("split Hamiltonians are constant along the integrated flow") {
    std::mt19937_64 rng(35);
    const InertiaSpec j(4, {1, 2, 4, 8});
    const LambdaSpec lam = lambda_from_inertia(j);
    const AntisymMatrix mu0 = random_antisym(4, rng, 0.7);
    const Trajectory traj = integrate(j, mu0, 2.0, 1e-3);
    const auto [h0, k0] = lm_hamiltonians(lam, mu_to_lm(mu0));
    double dh = 0.0, dk = 0.0;
    for (const auto& state : traj.states) {
        const auto [h, k] = lm_hamiltonians(lam, mu_to_lm(state));
        dh = std::max(dh, std::abs(h - h0));
        dk = std::max(dk, std::abs(k - k0));
    }
    CHECK(dh < 1e-8 * std::max(1.0, std::abs(h0)));
    CHECK(dk < 1e-8 * std::max(1.0, std::abs(k0)));
}

TEST_CASE("split field is conjugate to the matrix field") {
    std::mt19937_64 rng(33);
    const InertiaSpec j(4, {1, 2, 4, 8});
    const LambdaSpec lam = lambda_from_inertia(j);
    for (int trial = 0; trial < 100; ++trial) {
        const LMState s = random_lm(rng);
        const LMState push = mu_to_lm(vector_field(j, lm_to_mu(s)));
        const LMState d = lm_vector_field(lam, s);
        CHECK((push.l - d.l).norm() < 1e-11 * (1.0 + d.l.norm()));
        CHECK((push.m - d.m).norm() < 1e-11 * (1.0 + d.m.norm()));
    }
}

TEST_CASE("H and K commute under the Lie-Poisson bracket") {
    std::mt19937_64 rng(34);
    const LambdaSpec lam = random_generic_lambda(rng);
    const Eigen::Vector3d lv = lam.lambda();
    const Eigen::Vector3d th = lam.theta();
    for (int trial = 0; trial < 100; ++trial) {
        const LMState s = random_lm(rng);
        const AntisymMatrix mu = lm_to_mu(s);
        const AntisymMatrix gh = lm_gradient(lv.cwiseProduct(s.m), lv.cwiseProduct(s.l));
        const AntisymMatrix gk =
            lm_gradient(lv.cwiseAbs2().cwiseProduct(s.l) - th.cwiseProduct(s.m),
                        lv.cwiseAbs2().cwiseProduct(s.m) - th.cwiseProduct(s.l));
        CHECK(std::abs(lie_poisson_bracket(gh, gk, mu)) <
              1e-10 * (1.0 + gh.norm() * gk.norm() * mu.norm()));
    }
}
