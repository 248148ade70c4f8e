#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "asearch/potential.hpp"
#include "asearch/types.hpp"

namespace asearch {

struct NewtonSettings {
    double step_tolerance_scale = 0.01;  // multiplies h (velocity scale 1 m/s)
    int max_iterations = 200;
    double line_search_shrink = 0.5;
    double armijo = 1e-4;
};

struct SolveReport {
    int iterations = 0;
    double final_step_norm = 0.0;
    int halvings = 0;
    bool converged = false;
};

class Objective {
public:
    virtual ~Objective() = default;
    virtual double value(const Vec& x) const = 0;
    virtual Vec gradient(const Vec& x) const = 0;
    virtual Mat hessian(const Vec& x) const = 0;  // expected PSD up to the inertia term
};

// 1/2 ||x - target||^2_M + sum_i w_i P_i(x), with per-term PSD-projected
// Hessians. This is the incremental potential every implicit method here
// minimizes, up to the choice of target and weights.
class IncrementalObjective final : public Objective {
public:
    IncrementalObjective(const MassMatrix& m, Vec target);

    void add_term(const Potential* p, double weight);

    double value(const Vec& x) const override;
    Vec gradient(const Vec& x) const override;
    Mat hessian(const Vec& x) const override;

private:
    const MassMatrix& m_;
    Vec target_;
    std::vector<std::pair<const Potential*, double>> terms_;
};

// Projected Newton with backtracking line search. Trial points with infinite
// objective trigger halving before the Armijo test (the feasibility filter).
// Terminates when the Newton step infinity-norm drops to step_tolerance.
// Throws std::domain_error if x0 is infeasible.
std::pair<Vec, SolveReport> minimize(const Objective& objective, Vec x0,
                                     const NewtonSettings& settings, double step_tolerance);

}  // namespace asearch
