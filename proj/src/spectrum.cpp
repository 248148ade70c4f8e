#include "asearch/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asearch {

double SpectrumReport::band(int lo, int hi) const {
    double e = 0.0;
    for (int i = std::max(1, lo); i <= hi && i <= energies.size(); ++i) e += energies[i - 1];
    return e;
}

SpectrumReport modal_spectrum(const NeoHookeanChain1D& chain, const Vec& x, const Vec& v) {
    const int n = chain.nodes();
    if (x.size() != n || v.size() != n) throw std::invalid_argument("frame size mismatch");

    Vec rest = chain.rest_shape_centered();
    Mat k = chain.hessian(rest);
    Mat m = Mat::Zero(n, n);
    m.diagonal() = chain.masses();

    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(k, m);
    if (es.info() != Eigen::Success) throw std::runtime_error("modal eigensolve failed");
    Vec lambda = es.eigenvalues();
    double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
    if (lambda[0] < -1e-8 * scale)
        throw std::runtime_error("stiffness matrix indefinite at rest");

    const Vec& masses = chain.masses();
    double total_mass = masses.sum();
    double com = masses.dot(x) / total_mass;
    double com_v = masses.dot(v) / total_mass;
    Vec u = x.array() - com;
    u -= rest;
    Vec vt = v.array() - com_v;

    SpectrumReport report;
    report.omegas = Vec(n - 1);
    report.energies = Vec(n - 1);
    report.com_velocity = com_v;
    report.com_energy = 0.5 * total_mass * com_v * com_v;

    // Mode 0 is the rigid translation; modes are mass-orthonormal.
    for (int i = 1; i < n; ++i) {
        Vec phi = es.eigenvectors().col(i);
        double w2 = std::max(lambda[i], 0.0);
        double q = phi.dot(m * u);
        double qd = phi.dot(m * vt);
        report.omegas[i - 1] = std::sqrt(w2);
        report.energies[i - 1] = 0.5 * (w2 * q * q + qd * qd);
    }
    return report;
}

}  // namespace asearch
