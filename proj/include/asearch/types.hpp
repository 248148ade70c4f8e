#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace asearch {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

// Lumped (diagonal) mass matrix. Every entry must be strictly positive.
struct MassMatrix {
    Vec diag;

    explicit MassMatrix(Vec d) : diag(std::move(d)) {
        if (diag.size() == 0 || (diag.array() <= 0.0).any())
            throw std::invalid_argument("mass matrix entries must be positive");
    }

    static MassMatrix uniform(Eigen::Index n, double m) {
        return MassMatrix(Vec::Constant(n, m));
    }

    Eigen::Index size() const { return diag.size(); }
    double total() const { return diag.sum(); }

    Vec apply(const Vec& a) const { return diag.cwiseProduct(a); }
    Vec solve(const Vec& a) const { return a.cwiseQuotient(diag); }

    // a^T M b
    double dot(const Vec& a, const Vec& b) const {
        return a.cwiseProduct(diag).dot(b);
    }
    double norm_sq(const Vec& a) const { return dot(a, a); }
};

// Flat-coordinate state of one simulated system. energy_target and
// friction_loss carry the per-step bookkeeping of the energy-targeting
// integrators between steps.
struct SystemState {
    Vec x;
    Vec v;
    double t = 0.0;
    double energy_target = 0.0;
    double friction_loss = 0.0;
};

}  // namespace asearch
