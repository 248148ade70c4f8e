#pragma once

#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "asearch/types.hpp"

namespace asearch {

// Symmetric eigenvalue clamp at zero.
Mat psd_clamp(const Mat& h);

// A composable energy term over flat coordinates. Barrier-type potentials
// return +infinity outside their domain instead of throwing; feasibility is
// "energy finite".
class Potential {
public:
    virtual ~Potential() = default;

    virtual double energy(const Vec& x) const = 0;
    virtual Vec gradient(const Vec& x) const = 0;
    virtual Mat hessian(const Vec& x) const = 0;

    // Positive-semidefinite projection of the Hessian, used by the implicit
    // solver. Subclasses with structurally PSD or cheaply projectable
    // Hessians override this.
    virtual Mat hessian_psd(const Vec& x) const { return psd_clamp(hessian(x)); }

    bool feasible(const Vec& x) const { return std::isfinite(energy(x)); }
};

// Weighted sum of potentials; feasible iff all parts are feasible.
class CompositePotential final : public Potential {
public:
    void add(std::shared_ptr<const Potential> p, double weight = 1.0);

    double energy(const Vec& x) const override;
    Vec gradient(const Vec& x) const override;
    Mat hessian(const Vec& x) const override;
    Mat hessian_psd(const Vec& x) const override;

    const std::vector<std::pair<std::shared_ptr<const Potential>, double>>& parts() const {
        return parts_;
    }

private:
    std::vector<std::pair<std::shared_ptr<const Potential>, double>> parts_;
};

double kinetic_energy(const Vec& v, const MassMatrix& m);

// 1/2 v^T M v + P(x). Throws std::domain_error on infeasible x.
double total_energy(const SystemState& state, const MassMatrix& m, const Potential& p);

}  // namespace asearch
