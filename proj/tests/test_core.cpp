#include <doctest.h>

#include <random>

#include "asearch/potential.hpp"
#include "asearch/potentials.hpp"
#include "support/finite_diff.hpp"

using namespace asearch;

TEST_SUITE_BEGIN("core");

TEST_CASE("kinetic energy basics") {
    CHECK(kinetic_energy(Vec::Zero(3), MassMatrix::uniform(3, 2.0)) == 0.0);
    CHECK(kinetic_energy(Vec::Constant(1, -1.0), MassMatrix::uniform(1, 10.0)) ==
          doctest::Approx(5.0));
    Vec m(2), v(2);
    m << 1.0, 2.0;
    v << 2.0, 1.0;
    CHECK(kinetic_energy(v, MassMatrix(m)) == doctest::Approx(3.0));
}

TEST_CASE("total energy") {
    QuadraticSpring spring(1.0, 0.0);
    SystemState rest{Vec::Zero(1), Vec::Zero(1)};
    CHECK(total_energy(rest, MassMatrix::uniform(1, 1.0), spring) == 0.0);

    // moving free particle
    SystemState moving{Vec::Zero(1), Vec::Constant(1, 1.0)};
    CompositePotential none;
    CHECK(total_energy(moving, MassMatrix::uniform(1, 10.0), none) == doctest::Approx(5.0));

    // 1/2*2*3^2 + 1/2*4*1^2 = 11
    QuadraticSpring stiff(4.0, 0.0);
    SystemState s{Vec::Constant(1, 1.0), Vec::Constant(1, 3.0)};
    CHECK(total_energy(s, MassMatrix::uniform(1, 2.0), stiff) == doctest::Approx(11.0));
}

TEST_CASE("total energy rejects infeasible states") {
    IpcBarrier1D wall(1.0, 1.0, 0.0, +1);
    SystemState inside{Vec::Constant(1, -0.5), Vec::Zero(1)};
    CHECK_THROWS_AS(total_energy(inside, MassMatrix::uniform(1, 1.0), wall), std::domain_error);
}

TEST_CASE("total energy is invariant under dof permutation") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int n = 6;
    Vec x(n), v(n), m(n);
    for (int i = 0; i < n; ++i) {
        x[i] = u(rng);
        v[i] = u(rng);
        m[i] = 1.5 + u(rng);
    }
    QuadraticSpring spring(3.0, 0.25);  // acts per dof, permutation-consistent
    SystemState s{x, v};
    double e = total_energy(s, MassMatrix(m), spring);

    std::vector<int> perm = {3, 0, 5, 1, 4, 2};
    Vec xp(n), vp(n), mp(n);
    for (int i = 0; i < n; ++i) {
        xp[i] = x[perm[i]];
        vp[i] = v[perm[i]];
        mp[i] = m[perm[i]];
    }
    SystemState sp{xp, vp};
    CHECK(total_energy(sp, MassMatrix(mp), spring) == doctest::Approx(e).epsilon(1e-12));
}

TEST_CASE("mass matrix validates positivity") {
    Vec bad(2);
    bad << 1.0, 0.0;
    CHECK_THROWS_AS(MassMatrix{bad}, std::invalid_argument);
}

TEST_CASE("composite potential sums parts and feasibility") {
    auto spring = std::make_shared<QuadraticSpring>(2.0, 0.0);
    auto wall = std::make_shared<IpcBarrier1D>(1.0, 1.0, 0.0, +1);
    CompositePotential combo;
    combo.add(spring, 1.0);
    combo.add(wall, 2.0);

    Vec x = Vec::Constant(1, 0.5);
    CHECK(combo.energy(x) ==
          doctest::Approx(spring->energy(x) + 2.0 * wall->energy(x)).epsilon(1e-14));
    CHECK(testing::rel_err(combo.gradient(x),
                           Vec(spring->gradient(x) + 2.0 * wall->gradient(x))) < 1e-14);
    CHECK(combo.feasible(x));
    CHECK_FALSE(combo.feasible(Vec::Constant(1, -0.1)));
}

TEST_CASE("gradient check passes at random feasible points for a composite") {
    auto spring = std::make_shared<QuadraticSpring>(5.0, -0.2);
    auto wall = std::make_shared<IpcBarrier1D>(0.7, 2.0, -3.0, +1);
    CompositePotential combo;
    combo.add(spring, 0.5);
    combo.add(wall, 1.0);

    auto points = testing::sample_points(combo, Vec::Constant(4, 0.3), 1.5, 20, 11);
    auto err = testing::worst_derivative_errors(combo, points);
    CHECK(err.gradient < 1e-5);
    CHECK(err.hessian < 1e-4);
    CHECK(err.symmetry < 1e-10);
}

TEST_CASE("psd clamp floors negative curvature at zero") {
    Mat h(2, 2);
    h << 1.0, 0.0, 0.0, -3.0;
    Mat c = psd_clamp(h);
    Eigen::SelfAdjointEigenSolver<Mat> es(c);
    CHECK(es.eigenvalues().minCoeff() >= -1e-14);
    CHECK(c(0, 0) == doctest::Approx(1.0));
    CHECK(c(1, 1) == doctest::Approx(0.0));
}

TEST_SUITE_END();
