#pragma once

#include <vector>

#include "asearch/integrators.hpp"
#include "asearch/types.hpp"

namespace asearch {

// Single particle of mass m approaching a wall at the origin from the
// positive side with speed `speed`. The particle starts beta*h*speed away so
// it reaches the wall a fraction beta of the way through the first step.
struct CollisionScenario {
    enum class Barrier { quadratic, ipc };

    Barrier barrier = Barrier::quadratic;
    double omega_sq = 1.0;   // k/m (quadratic) or kappa/(m dhat^2) (ipc)
    double beta = 0.5;
    double h = 1.0;
    double speed = 1.0;
    double alpha_min = 0.0;
    double alpha_max = 1.1;
    double assumed_speed = 0.0;  // wrong-target variant; 0 means use `speed`
    double kappa = 1.0;          // ipc only
    double dhat = 1.0;           // ipc only

    // h chosen so that h^2 * omega_sq = hbar.
    static CollisionScenario from_hbar(Barrier barrier, double hbar, double beta);

    void validate() const;
};

struct CollisionSample {
    int step = 0;
    double t = 0.0, x = 0.0, v = 0.0;
    double kinetic = 0.0, potential = 0.0;
};

struct CollisionSummary {
    int steps_in_contact = 0;   // first step at which the particle is outside
                                // the barrier support and moving away
    double exit_speed = 0.0;
    double min_kinetic = 0.0;   // over steps before exit
    std::vector<CollisionSample> trajectory;
};

// Simulates until the particle has been outside the barrier support and
// moving away for two consecutive steps. Throws after 10^6 steps.
CollisionSummary collide(const CollisionScenario& scenario, Method method);

// Stormer-Verlet reference integration; errors out if the energy drifts by
// more than 1% of its initial magnitude (suggesting a smaller dt_ref).
SystemState verlet_integrate(const Potential& p, const MassMatrix& m, SystemState state,
                             double dt, long steps);

// Exit speed of the scenario's barrier under the reference integrator,
// started at the edge of the barrier support (the approach is free flight,
// so the phase is irrelevant for the true dynamics).
double reference_collision_exit_speed(const CollisionScenario& scenario, double dt_ref);

}  // namespace asearch
