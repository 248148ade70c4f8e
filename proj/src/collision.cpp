#include "asearch/collision.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "asearch/potentials.hpp"

namespace asearch {

CollisionScenario CollisionScenario::from_hbar(Barrier barrier, double hbar, double beta) {
    CollisionScenario s;
    s.barrier = barrier;
    s.beta = beta;
    if (barrier == Barrier::ipc) s.omega_sq = s.kappa / (s.dhat * s.dhat);  // unit mass
    s.h = std::sqrt(hbar / s.omega_sq);
    return s;
}

void CollisionScenario::validate() const {
    if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("collision phase must be in [0,1]");
    if (h <= 0.0 || speed <= 0.0 || omega_sq <= 0.0)
        throw std::invalid_argument("collision scenario parameters must be positive");
    if (alpha_min > 1.0 || alpha_max < 1.0)
        throw std::invalid_argument("alpha range must contain 1");
}

namespace {

struct BarrierGeometry {
    std::shared_ptr<const Potential> potential;
    double support_edge = 0.0;  // particle is outside when x >= support_edge
};

BarrierGeometry make_barrier(const CollisionScenario& s) {
    BarrierGeometry g;
    if (s.barrier == CollisionScenario::Barrier::quadratic) {
        g.potential = std::make_shared<OneSidedQuadraticBarrier>(s.omega_sq, -1);
        g.support_edge = 0.0;
    } else {
        g.potential = std::make_shared<IpcBarrier1D>(s.kappa, s.dhat, 0.0, +1);
        g.support_edge = s.dhat;
    }
    return g;
}

}  // namespace

CollisionSummary collide(const CollisionScenario& scenario, Method method) {
    scenario.validate();
    BarrierGeometry geom = make_barrier(scenario);
    MassMatrix m = MassMatrix::uniform(1, 1.0);

    SystemState state;
    state.x = Vec::Constant(1, scenario.beta * scenario.h * scenario.speed);
    state.v = Vec::Constant(1, -scenario.speed);

    IntegratorSpec spec;
    spec.kind = method;
    spec.alpha_min = scenario.alpha_min;
    spec.alpha_max = scenario.alpha_max;

    NewtonSettings settings;
    // Position scales here are set by the barrier, not by h: resolve the
    // solve to a small fraction of the support width. (On the one-sided
    // quadratic barrier Newton is exact regardless of this tolerance.)
    settings.step_tolerance_scale = 1e-9 * std::max(1.0, scenario.dhat) / scenario.h;

    Stepper stepper(spec, m, geom.potential, {}, settings);
    stepper.reset(state);
    if (scenario.assumed_speed > 0.0)
        state.energy_target = 0.5 * scenario.assumed_speed * scenario.assumed_speed;

    CollisionSummary out;
    out.min_kinetic = kinetic_energy(state.v, m);
    bool prev_out = false;
    const long max_steps = 1000000;
    for (long step = 1; step <= max_steps; ++step) {
        stepper.advance(state, scenario.h);
        CollisionSample sample;
        sample.step = static_cast<int>(step);
        sample.t = state.t;
        sample.x = state.x[0];
        sample.v = state.v[0];
        sample.kinetic = kinetic_energy(state.v, m);
        sample.potential = geom.potential->energy(state.x);
        out.trajectory.push_back(sample);

        bool outside = state.x[0] >= geom.support_edge && sample.potential == 0.0;
        bool away = state.v[0] > 0.0;
        if (outside && away) {
            if (prev_out) {
                out.steps_in_contact = static_cast<int>(step) - 1;
                out.exit_speed = std::abs(out.trajectory[step - 2].v);
                return out;
            }
            prev_out = true;
        } else {
            prev_out = false;
            out.min_kinetic = std::min(out.min_kinetic, sample.kinetic);
        }
    }
    throw std::runtime_error("collision did not resolve within 1e6 steps");
}

SystemState verlet_integrate(const Potential& p, const MassMatrix& m, SystemState state,
                             double dt, long steps) {
    double h0 = total_energy(state, m, p);
    double tol = 0.01 * std::max(1.0, std::abs(h0));
    Vec g = p.gradient(state.x);
    for (long i = 0; i < steps; ++i) {
        Vec vh = state.v - 0.5 * dt * m.solve(g);
        state.x += dt * vh;
        g = p.gradient(state.x);
        state.v = vh - 0.5 * dt * m.solve(g);
        state.t += dt;
        if (std::abs(total_energy(state, m, p) - h0) > tol)
            throw std::runtime_error("reference integration drifted; reduce dt_ref");
    }
    return state;
}

double reference_collision_exit_speed(const CollisionScenario& scenario, double dt_ref) {
    BarrierGeometry geom = make_barrier(scenario);
    const Potential& p = *geom.potential;
    MassMatrix m = MassMatrix::uniform(1, 1.0);

    SystemState state;
    state.x = Vec::Constant(1, geom.support_edge);
    state.v = Vec::Constant(1, -scenario.speed);

    double h0 = total_energy(state, m, p);
    double tol = 0.01 * std::max(1.0, std::abs(h0));
    double omega = std::sqrt(scenario.omega_sq);
    long max_steps = static_cast<long>(100.0 * (M_PI / omega) / dt_ref) + 1000;

    Vec g = p.gradient(state.x);
    for (long i = 0; i < max_steps; ++i) {
        Vec vh = state.v - 0.5 * dt_ref * m.solve(g);
        state.x += dt_ref * vh;
        g = p.gradient(state.x);
        state.v = vh - 0.5 * dt_ref * m.solve(g);
        if (std::abs(total_energy(state, m, p) - h0) > tol)
            throw std::runtime_error("reference integration drifted; reduce dt_ref");
        if (state.x[0] >= geom.support_edge && state.v[0] > 0.0) return std::abs(state.v[0]);
    }
    throw std::runtime_error("reference collision did not resolve");
}

}  // namespace asearch
