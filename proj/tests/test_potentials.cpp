#include <doctest.h>

#include <cmath>

#include "asearch/potentials.hpp"
#include "support/finite_diff.hpp"

using namespace asearch;

TEST_SUITE_BEGIN("potentials");

TEST_CASE("finite-difference suite over every potential") {
    auto check = [](const Potential& p, const Vec& base, double amplitude, unsigned seed) {
        auto points = testing::sample_points(p, base, amplitude, 20, seed);
        auto err = testing::worst_derivative_errors(p, points);
        CAPTURE(err.gradient);
        CAPTURE(err.hessian);
        CHECK(err.gradient < 1e-5);
        CHECK(err.hessian < 1e-4);
        CHECK(err.symmetry < 1e-10);
    };

    check(QuadraticSpring(7.0, 0.3), Vec::Constant(3, 0.0), 2.0, 1);
    check(OneSidedQuadraticBarrier(4.0, -1), Vec::Constant(2, -0.8), 0.5, 2);
    // normalized units keep the finite-difference oracle's 1e-6 step valid
    check(IpcBarrier1D(1.0, 1.0, 0.0, +1), Vec::Constant(2, 0.5), 0.4, 3);

    NeoHookeanChain1D chain = NeoHookeanChain1D::uniform(8, 1.0, 10.0, 50.0);
    Vec rest(9);
    for (int i = 0; i < 9; ++i) rest[i] = i * 0.125;
    check(chain, rest, 0.03, 4);

    check(Gravity(9.8, Vec::Constant(3, 2.0), 1, 0), Vec::Constant(3, 1.0), 5.0, 5);

    CentralSpring2D orbit(3.0, 1.0, Vec2(0.5, -0.5));
    Vec base(4);
    base << 2.0, 0.5, -1.0, 1.5;
    check(orbit, base, 0.4, 6);

    NeoHookeanChain1D small = NeoHookeanChain1D::uniform(3, 0.3, 1.0, 20.0);
    Vec anchor(4);
    anchor << 0.0, 0.11, 0.19, 0.32;
    check(build_rayleigh(0.05, small, anchor, 0.01), anchor, 0.02, 7);

    Vec lambda(3);
    lambda << 0.0, 2.0, 5.0;
    check(CoulombFrictionPseudoPotential(0.3, lambda, Vec::Constant(3, 0.1), 0.02),
          Vec::Constant(3, 0.1), 0.3, 8);
}

TEST_CASE("one-sided quadratic barrier is C1 and one-sided") {
    OneSidedQuadraticBarrier b(10.0, -1);
    CHECK(b.energy(Vec::Constant(1, 0.5)) == 0.0);
    CHECK(b.energy(Vec::Constant(1, -0.5)) == doctest::Approx(1.25));
    CHECK(b.gradient(Vec::Constant(1, 1e-12))[0] == 0.0);
    CHECK(b.gradient(Vec::Constant(1, -1e-12))[0] == doctest::Approx(0.0).epsilon(1e-10));

    OneSidedQuadraticBarrier flipped(10.0, +1);
    CHECK(flipped.energy(Vec::Constant(1, 0.5)) == doctest::Approx(1.25));
    CHECK(flipped.energy(Vec::Constant(1, -0.5)) == 0.0);
}

TEST_CASE("log barrier vanishes C2 at the threshold and diverges at contact") {
    double kappa = 1e5, dhat = 1e-3;
    IpcBarrier1D b(kappa, dhat, 0.0, +1);

    Vec at_edge = Vec::Constant(1, dhat * (1.0 - 1e-6));
    CHECK(std::abs(b.energy(at_edge)) < 1e-12 * kappa);
    CHECK(std::abs(b.gradient(at_edge)[0]) < 1e-6 * kappa);
    CHECK(std::abs(b.hessian(at_edge)(0, 0)) < 1e-4 * kappa / (dhat * dhat));

    CHECK(b.energy(Vec::Constant(1, dhat * 2.0)) == 0.0);
    CHECK(b.energy(Vec::Constant(1, 0.0)) == std::numeric_limits<double>::infinity());
    CHECK(b.energy(Vec::Constant(1, -1e-9)) == std::numeric_limits<double>::infinity());

    // convex on the active interval
    for (double u : {0.05, 0.2, 0.5, 0.9, 0.999})
        CHECK(b.hessian(Vec::Constant(1, u * dhat))(0, 0) > 0.0);
}

TEST_CASE("contact normal force weights") {
    IpcBarrier1D b(1e5, 1e-3, 0.0, +1);

    Vec far = Vec::Constant(3, 0.01);
    CHECK(ipc_normal_force_weights(far, b).isZero());

    // single dof at half the threshold: match the hand derivative
    double dhat = 1e-3, kappa = 1e5, d = dhat / 2.0, u = d / dhat;
    double expected = std::abs(-kappa * (2.0 * (u - 1.0) * std::log(u) + (u - 1.0) * (u - 1.0) / u) / dhat);
    Vec x = Vec::Constant(1, d);
    CHECK(ipc_normal_force_weights(x, b)[0] == doctest::Approx(expected).epsilon(1e-12));
    // cross-check against the module's own finite-difference gradient
    CHECK(ipc_normal_force_weights(x, b)[0] ==
          doctest::Approx(std::abs(testing::fd_gradient(b, x)[0])).epsilon(1e-4));

    // weights vanish continuously at the threshold
    Vec near_edge = Vec::Constant(1, dhat * (1.0 - 1e-6));
    CHECK(ipc_normal_force_weights(near_edge, b)[0] < 1e-6 * kappa);

    CHECK_THROWS_AS(ipc_normal_force_weights(Vec::Constant(1, -1e-6), b), std::domain_error);
}

TEST_CASE("chain rest state is a strict feasible minimum") {
    NeoHookeanChain1D chain = NeoHookeanChain1D::uniform(10, 1.0, 10.0, 100.0);
    Vec rest(11);
    for (int i = 0; i < 11; ++i) rest[i] = 0.1 * i;

    CHECK(chain.energy(rest) == doctest::Approx(0.0));
    CHECK(chain.gradient(rest).cwiseAbs().maxCoeff() < 1e-12);

    Eigen::SelfAdjointEigenSolver<Mat> es(chain.hessian(rest));
    double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    CHECK(es.eigenvalues().minCoeff() >= -1e-10 * scale);

    // inversion barrier
    Vec inverted = rest;
    inverted[5] = inverted[6] + 0.01;
    CHECK_FALSE(chain.feasible(inverted));
    Vec squeezed = rest;
    squeezed[5] = inverted[4] + 1e-9;
    CHECK(std::isfinite(chain.energy(squeezed)));
}

TEST_CASE("chain wave speed calibration") {
    // fundamental of a free rod: omega_1 = pi sqrt(E/rho) / L
    double length = 1.0, mass = 10.0, wave_speed = 1.0;
    double youngs = (mass / length) * wave_speed * wave_speed;
    NeoHookeanChain1D chain = NeoHookeanChain1D::uniform(30, length, mass, youngs);

    Vec rest(31);
    for (int i = 0; i < 31; ++i) rest[i] = i / 30.0;
    Mat k = chain.hessian(rest);
    Mat m = Mat::Zero(31, 31);
    m.diagonal() = chain.masses();
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(k, m);

    double omega1 = std::sqrt(es.eigenvalues()[1]);
    double analytic = M_PI * wave_speed / length;
    CHECK(std::abs(omega1 - analytic) / analytic < 0.05);
}

TEST_CASE("central spring is rotationally invariant about the pivot") {
    CentralSpring2D spring(2.0, 1.0, Vec2(0.3, -0.7));
    Vec x(2);
    x << 1.7, 0.1;
    double e0 = spring.energy(x);
    for (double angle : {0.3, 1.2, 2.9}) {
        double c = std::cos(angle), s = std::sin(angle);
        Vec2 r(x[0] - 0.3, x[1] + 0.7);
        Vec xr(2);
        xr << 0.3 + c * r[0] - s * r[1], -0.7 + s * r[0] + c * r[1];
        CHECK(std::abs(spring.energy(xr) - e0) < 1e-12);
    }
}

TEST_CASE("rayleigh pseudo-potential") {
    // mu = 0 -> zero potential
    QuadraticSpring base(4.0, 0.0);
    Vec anchor = Vec::Constant(1, 1.0);
    auto zero = build_rayleigh(0.0, base, anchor, 0.1);
    CHECK(zero.energy(Vec::Constant(1, 3.0)) == 0.0);

    // single dof: K = 4, h = 0.1, mu = 0.05, x - x_n = 0.2
    auto damp = build_rayleigh(0.05, base, anchor, 0.1);
    CHECK(damp.energy(Vec::Constant(1, 1.2)) == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(damp.gradient(anchor).cwiseAbs().maxCoeff() == 0.0);

    // frozen Hessian is clamped PSD
    OneSidedQuadraticBarrier concaveish(1.0, -1);  // zero curvature on the + side
    auto flat = build_rayleigh(0.05, concaveish, Vec::Constant(1, 1.0), 0.1);
    CHECK(flat.hessian(anchor)(0, 0) >= 0.0);
}

TEST_CASE("pseudo-potentials dissipate: 2 P_n(x) >= 0") {
    NeoHookeanChain1D chain = NeoHookeanChain1D::uniform(5, 0.2, 2.0, 30.0);
    Vec anchor(6);
    for (int i = 0; i < 6; ++i) anchor[i] = 0.2 * i;
    auto damp = build_rayleigh(0.05, chain, anchor, 0.01);

    Vec lambda(6);
    lambda << 0.0, 1.0, 2.0, 0.5, 0.0, 3.0;
    CoulombFrictionPseudoPotential fric(0.25, lambda, anchor, 0.01);

    auto points = testing::sample_points(damp, anchor, 0.05, 30, 17);
    for (const Vec& x : points) {
        CHECK(2.0 * damp.energy(x) >= 0.0);
        CHECK(2.0 * fric.energy(x) >= 0.0);
    }
    CHECK(fric.energy(anchor) == 0.0);
}

TEST_SUITE_END();
