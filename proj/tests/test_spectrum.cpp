#include <doctest.h>

#include <cmath>

#include "asearch/spectrum.hpp"

using namespace asearch;

namespace {

NeoHookeanChain1D soft_chain() { return NeoHookeanChain1D::uniform(30, 1.0, 10.0, 10.0); }

Vec rest_positions(const NeoHookeanChain1D& chain, double offset = 0.0) {
    Vec x(chain.nodes());
    for (int i = 0; i < chain.nodes(); ++i) x[i] = offset + i * chain.rest_element_length();
    return x;
}

}  // namespace

TEST_SUITE_BEGIN("spectrum");

TEST_CASE("rest state carries no modal energy") {
    auto chain = soft_chain();
    auto report = modal_spectrum(chain, rest_positions(chain, 3.7), Vec::Zero(31));
    CHECK(report.total() < 1e-12);
    CHECK(report.com_energy == 0.0);
    // frequencies ascend and are positive past the rigid mode
    for (int i = 1; i < report.omegas.size(); ++i)
        CHECK(report.omegas[i] >= report.omegas[i - 1]);
    CHECK(report.omegas[0] > 0.0);
}

TEST_CASE("unit modal velocity lands in exactly one bin") {
    auto chain = soft_chain();
    Vec x = rest_positions(chain);
    Mat k = chain.hessian(x);
    Mat m = Mat::Zero(31, 31);
    m.diagonal() = chain.masses();
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(k, m);

    Vec v = es.eigenvectors().col(1);  // first vibrational mode, mass-orthonormal
    auto report = modal_spectrum(chain, x, v);
    CHECK(report.energies[0] == doctest::Approx(0.5).epsilon(1e-10));
    for (int i = 1; i < report.energies.size(); ++i) CHECK(report.energies[i] <= 1e-10);
    CHECK(std::abs(report.com_velocity) < 1e-12);
}

TEST_CASE("modal energies satisfy the linearized Parseval identity") {
    auto chain = soft_chain();
    Vec x = rest_positions(chain, -0.4);
    Vec u(31), v(31);
    for (int i = 0; i < 31; ++i) {
        u[i] = 1e-3 * std::sin(2.1 * i) * std::cos(0.3 * i * i);
        v[i] = 0.2 + 1e-2 * std::sin(1.3 * i + 0.4);
    }
    x += u;
    auto report = modal_spectrum(chain, x, v);

    // linearized energy of the projected (translation-removed) state
    Vec rest = rest_positions(chain);
    Mat k = chain.hessian(rest);
    const Vec& masses = chain.masses();
    double com = masses.dot(x) / masses.sum();
    double com_v = masses.dot(v) / masses.sum();
    Vec ur = x - (rest.array() - rest.dot(masses) / masses.sum() + com).matrix();
    Vec vr = (v.array() - com_v).matrix();
    double linearized = 0.5 * ur.dot(k * ur) + 0.5 * vr.cwiseProduct(masses).dot(vr);

    CHECK(std::abs(report.total() - linearized) <= 1e-10 * std::max(1.0, linearized));
    CHECK(report.com_velocity == doctest::Approx(com_v).epsilon(1e-12));
}

TEST_CASE("band sums are inclusive and clamped") {
    auto chain = soft_chain();
    Vec x = rest_positions(chain);
    Vec v = Vec::Constant(31, 0.5);
    v[15] += 0.01;
    auto report = modal_spectrum(chain, x, v);
    CHECK(report.band(1, 30) == doctest::Approx(report.total()).epsilon(1e-12));
    CHECK(report.band(4, 15) <= report.total());
    CHECK(report.band(31, 40) == 0.0);
}

TEST_SUITE_END();
