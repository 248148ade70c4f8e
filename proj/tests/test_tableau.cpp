#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "asearch/tableau.hpp"

using namespace asearch;
using cx = std::complex<double>;

TEST_SUITE_BEGIN("tableau");

TEST_CASE("adjoint of implicit Euler is explicit Euler") {
    Tableau adj = adjoint(tableaux::implicit_euler());
    CHECK(adj.A(0, 0) == doctest::Approx(0.0));
    CHECK(adj.b[0] == doctest::Approx(1.0));
}

TEST_CASE("adjoint is an involution") {
    for (const Tableau& t : tableaux::catalog()) {
        Tableau back = adjoint(adjoint(t));
        CHECK((back.A - t.A).cwiseAbs().maxCoeff() < 1e-15);
        CHECK((back.b - t.b).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("trapezoidal adjoint swaps rows and keeps R") {
    Tableau adj = adjoint(tableaux::trapezoidal());
    Mat expected(2, 2);
    expected << 0.5, 0.5, 0.0, 0.0;
    CHECK((adj.A - expected).cwiseAbs().maxCoeff() < 1e-15);
    // self-adjoint up to stage permutation: same stability function
    for (cx z : {cx(0.3, 0.7), cx(-1.0, 2.0), cx(0.0, 5.0)}) {
        cx r1 = stability_function(tableaux::trapezoidal(), z);
        cx r2 = stability_function(adj, z);
        CHECK(std::abs(r1 - r2) < 1e-12);
    }
}

TEST_CASE("symplecticity test") {
    CHECK(is_symplectic(tableaux::implicit_midpoint()));
    CHECK_FALSE(is_symplectic(tableaux::trapezoidal()));
    CHECK_FALSE(is_symplectic(tableaux::explicit_euler()));
    CHECK_FALSE(is_symplectic(tableaux::implicit_euler()));
    CHECK_FALSE(is_symplectic(tableaux::sdirk2()));
}

TEST_CASE("stability function closed values") {
    CHECK(std::abs(stability_function(tableaux::implicit_euler(), cx(-1.0, 0.0)) - cx(0.5, 0.0)) <
          1e-15);
    CHECK(std::abs(stability_function(tableaux::explicit_euler(), cx(-1.0, 0.0)) - cx(0.0, 0.0)) <
          1e-15);
    cx z(0.0, 1.0);
    cx expected = (cx(2.0, 0.0) + z) / (cx(2.0, 0.0) - z);
    CHECK(std::abs(stability_function(tableaux::trapezoidal(), z) - expected) < 1e-14);
    CHECK(std::abs(std::abs(stability_function(tableaux::trapezoidal(), z)) - 1.0) < 1e-14);
}

TEST_CASE("stability function pole detection") {
    CHECK_THROWS_AS(stability_function(tableaux::implicit_euler(), cx(1.0, 0.0)),
                    std::domain_error);
}

TEST_CASE("adjoint reflection identity R*(z) R(-z) = 1") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (const Tableau& t : tableaux::catalog()) {
        Tableau adj = adjoint(t);
        int done = 0;
        while (done < 100) {
            cx z(u(rng), u(rng));
            cx prod;
            try {
                prod = stability_function(adj, z) * stability_function(t, -z);
            } catch (const std::domain_error&) {
                continue;  // resample off the poles
            }
            CHECK(std::abs(prod - cx(1.0, 0.0)) < 1e-10);
            ++done;
        }
    }
}

TEST_CASE("A-stability spot check on the left half plane") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> radius(0.0, 100.0);
    std::uniform_real_distribution<double> angle(M_PI / 2.0, 3.0 * M_PI / 2.0);
    for (const char* name : {"implicit_euler", "midpoint", "trapezoidal"}) {
        Tableau t = tableaux::by_name(name);
        for (int i = 0; i < 1000; ++i) {
            double r = radius(rng), a = angle(rng);
            cx z(r * std::cos(a), r * std::sin(a));
            CHECK(std::abs(stability_function(t, z)) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("L-stability at z -> -inf") {
    CHECK(std::abs(stability_function(tableaux::implicit_euler(), cx(-1e6, 0.0))) < 1e-5);
    CHECK(std::abs(stability_function(tableaux::sdirk2(), cx(-1e6, 0.0))) < 1e-5);
    CHECK(std::abs(stability_function(tableaux::trapezoidal(), cx(-1e6, 0.0))) > 0.999);
}

TEST_CASE("sdirk2 is stiffly accurate and second order") {
    Tableau t = tableaux::sdirk2();
    CHECK((t.A.row(1).transpose() - t.b).cwiseAbs().maxCoeff() < 1e-15);
    // order 2: b^T e = 1, b^T c = 1/2
    Vec c = t.A.rowwise().sum();
    CHECK(t.b.sum() == doctest::Approx(1.0));
    CHECK(t.b.dot(c) == doctest::Approx(0.5));
}

TEST_SUITE_END();
