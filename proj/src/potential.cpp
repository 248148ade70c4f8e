#include "asearch/potential.hpp"

#include <stdexcept>

namespace asearch {

Mat psd_clamp(const Mat& h) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.transpose()));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed in psd_clamp");
    Vec ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

void CompositePotential::add(std::shared_ptr<const Potential> p, double weight) {
    if (!p) throw std::invalid_argument("null potential");
    if (weight < 0.0) throw std::invalid_argument("composite weights must be nonnegative");
    parts_.emplace_back(std::move(p), weight);
}

double CompositePotential::energy(const Vec& x) const {
    double e = 0.0;
    for (const auto& [p, w] : parts_) e += w * p->energy(x);
    return e;
}

Vec CompositePotential::gradient(const Vec& x) const {
    Vec g = Vec::Zero(x.size());
    for (const auto& [p, w] : parts_) g += w * p->gradient(x);
    return g;
}

Mat CompositePotential::hessian(const Vec& x) const {
    Mat h = Mat::Zero(x.size(), x.size());
    for (const auto& [p, w] : parts_) h += w * p->hessian(x);
    return h;
}

Mat CompositePotential::hessian_psd(const Vec& x) const {
    Mat h = Mat::Zero(x.size(), x.size());
    for (const auto& [p, w] : parts_) h += w * p->hessian_psd(x);
    return h;
}

double kinetic_energy(const Vec& v, const MassMatrix& m) {
    if (v.size() != m.size()) throw std::invalid_argument("velocity/mass size mismatch");
    return 0.5 * m.norm_sq(v);
}

double total_energy(const SystemState& state, const MassMatrix& m, const Potential& p) {
    double pe = p.energy(state.x);
    if (!std::isfinite(pe)) throw std::domain_error("infeasible state");
    return kinetic_energy(state.v, m) + pe;
}

}  // namespace asearch
