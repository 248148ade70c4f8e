#include <doctest.h>

#include <cmath>
#include <memory>

#include "asearch/collision.hpp"
#include "asearch/potentials.hpp"

using namespace asearch;

TEST_SUITE_BEGIN("collision");

namespace {
const double kBetaGrid[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}

TEST_CASE("trapezoidal against the stiff one-sided quadratic wall") {
    for (double beta : kBetaGrid) {
        CAPTURE(beta);
        auto sc = CollisionScenario::from_hbar(CollisionScenario::Barrier::quadratic, 1e8, beta);
        auto r = collide(sc, Method::trapezoidal);
        if (beta < 2.0 / 3.0) {
            CHECK(r.steps_in_contact == 2);
            CHECK(std::abs(r.exit_speed - (3.0 - 4.0 * beta)) < 1e-5);
        } else {
            CHECK(r.steps_in_contact == 3);
            CHECK(std::abs(r.exit_speed - (8.0 * beta - 5.0)) < 1e-5);
        }
    }
}

TEST_CASE("the decoupled method resolves the stiff wall in four steps at unit speed") {
    for (double beta : kBetaGrid) {
        CAPTURE(beta);
        auto sc = CollisionScenario::from_hbar(CollisionScenario::Barrier::quadratic, 1e8, beta);
        auto r = collide(sc, Method::a1);
        CHECK(r.steps_in_contact == 4);
        CHECK(std::abs(r.exit_speed - 1.0) < 1e-6);
        // intermediate velocities -1, -beta, 1-beta
        CHECK(std::abs(r.trajectory[0].v - (-1.0)) < 1e-5);
        CHECK(std::abs(r.trajectory[1].v - (-beta)) < 1e-5);
        CHECK(std::abs(r.trajectory[2].v - (1.0 - beta)) < 1e-5);
        // kinetic energy dips below the incoming level mid-resolution
        CHECK(r.min_kinetic < 0.5 - 0.01);
    }
}

TEST_CASE("energy search keeps the exit speed while capping the dip") {
    for (double alpha_max : {1.1, 2.0, 10.0}) {
        for (double beta : kBetaGrid) {
            CAPTURE(alpha_max);
            CAPTURE(beta);
            auto sc =
                CollisionScenario::from_hbar(CollisionScenario::Barrier::quadratic, 1e8, beta);
            sc.alpha_max = alpha_max;
            auto r = collide(sc, Method::asearch);
            CHECK(std::abs(r.exit_speed - 1.0) < 1e-6);
            double want_v2 = -std::min(beta * alpha_max, 1.0);
            CHECK(std::abs(r.trajectory[1].v - want_v2) < 1e-6);
        }
    }
}

TEST_CASE("a wrong assumed energy level does not change the exit speed") {
    for (double beta : kBetaGrid) {
        CAPTURE(beta);
        auto sc = CollisionScenario::from_hbar(CollisionScenario::Barrier::quadratic, 1e8, beta);
        sc.assumed_speed = 2.0;
        auto r = collide(sc, Method::asearch);
        CHECK(std::abs(r.exit_speed - 1.0) < 1e-6);
    }
}

TEST_CASE("reference integrator: quadratic barrier bounce is lossless") {
    auto sc = CollisionScenario::from_hbar(CollisionScenario::Barrier::quadratic, 1.0, 0.5);
    double exit = reference_collision_exit_speed(sc, 1e-4);
    CHECK(std::abs(exit - 1.0) < 1e-6);
}

TEST_CASE("reference integrator: bounded energy drift over 100 oscillator periods") {
    QuadraticSpring spring(1.0, 0.0);
    MassMatrix m = MassMatrix::uniform(1, 1.0);
    SystemState s;
    s.x = Vec::Constant(1, 1.0);
    s.v = Vec::Zero(1);
    double dt = 2.0 * M_PI / 1000.0;
    s = verlet_integrate(spring, m, std::move(s), dt, 100 * 1000);
    double e = total_energy(s, m, spring);
    CHECK(std::abs(e - 0.5) < 1e-6 * 0.5);
}

TEST_CASE("reference integrator raises on unstable step sizes") {
    QuadraticSpring spring(1.0, 0.0);
    MassMatrix m = MassMatrix::uniform(1, 1.0);
    SystemState s;
    s.x = Vec::Constant(1, 1.0);
    s.v = Vec::Zero(1);
    CHECK_THROWS_AS(verlet_integrate(spring, m, std::move(s), 2.5, 10000), std::runtime_error);
}

// Exit speed of the log-barrier bounce under the reference integrator at
// dt_ref = 1e-5, frozen as a fixture; the barrier is conservative, so the
// true value is the incoming speed.
constexpr double kIpcOracleExitSpeed = 1.0;

TEST_CASE("log-barrier oracle fixture reproduces") {
    auto sc = CollisionScenario::from_hbar(CollisionScenario::Barrier::ipc, 1e8, 0.5);
    double oracle = reference_collision_exit_speed(sc, 1e-5);
    CHECK(std::abs(oracle - kIpcOracleExitSpeed) < 1e-4);
}

TEST_CASE("log-barrier collisions mirror the quadratic-wall behavior") {
    for (double beta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        CAPTURE(beta);
        auto sc = CollisionScenario::from_hbar(CollisionScenario::Barrier::ipc, 1e8, beta);
        auto a = collide(sc, Method::a1);
        CHECK(a.steps_in_contact == 4);
        CHECK(std::abs(a.exit_speed - kIpcOracleExitSpeed) < 0.01);
        auto s = collide(sc, Method::asearch);
        CHECK(std::abs(s.exit_speed - kIpcOracleExitSpeed) < 0.01);
        auto t = collide(sc, Method::trapezoidal);
        double quad = beta < 2.0 / 3.0 ? 3.0 - 4.0 * beta : 8.0 * beta - 5.0;
        CHECK(std::abs(t.exit_speed - quad) < 0.01);
    }
}

TEST_CASE("scenario validation") {
    CollisionScenario sc;
    sc.beta = 1.5;
    CHECK_THROWS_AS(collide(sc, Method::a1), std::invalid_argument);
    CollisionScenario ok = CollisionScenario::from_hbar(
        CollisionScenario::Barrier::quadratic, 1.0, 0.5);
    CHECK(ok.h == doctest::Approx(1.0));
}

TEST_SUITE_END();
