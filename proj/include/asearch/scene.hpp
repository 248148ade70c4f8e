#pragma once

#include <memory>
#include <string>

#include "asearch/config.hpp"
#include "asearch/integrators.hpp"
#include "asearch/potentials.hpp"

namespace asearch {

enum class SceneKind { harmonic, point_collision, chain_collision, central_orbit, free_chain };

SceneKind scene_kind_from_name(const std::string& name);

struct SceneConfig {
    SceneKind kind = SceneKind::harmonic;
    double h = 0.01;
    double duration = 1.0;
    long snapshot_stride = 0;  // 0: final snapshot only
    IntegratorSpec integrator;

    // material
    int element_count = 30;
    double length = 1.0;
    double total_mass = 10.0;
    double youngs_modulus = 10.0;  // wave_speed, when given, sets E = (m/L) c^2
    double stiffness = 1.0;        // harmonic / orbit spring constant
    double mass = 1.0;             // point scenes
    double rest_radius = 1.0;      // orbit

    // barrier (collision scenes)
    std::string barrier_kind = "ipc";  // ipc | quadratic
    double kappa = 1e5;
    double dhat = 1e-3;
    double wall = 0.0;
    double barrier_stiffness = 1.0;  // quadratic barrier

    // dissipation
    std::string damping_kind;  // "", rayleigh, drag
    double damping_mu = 0.0;
    double friction_mu = 0.0;

    // initial conditions
    double velocity = 0.0;  // uniform initial velocity (chains, point)
    double gap = 0.25;      // distance from the leading node to the wall
    double x0 = 1.0, v0 = 0.0;  // harmonic
    double radius = 1.5, tangential_velocity = 0.0;  // orbit (0: circular balance)
    int mode_index = 0;
    double mode_amplitude = 0.0;  // free chain mode excitation

    static SceneConfig from_raw(const RawConfig& raw);

    // The standard 1D chain collision scenes: 1 m, 30 elements, 10 kg, wave
    // speeds {1, 10, 100} m/s, initial velocity -1 m/s against an ipc wall;
    // "damped_soft" adds Rayleigh damping mu = 0.05.
    static SceneConfig chain_preset(const std::string& name, double h, Method method);
};

struct BuiltScene {
    MassMatrix mass;
    std::shared_ptr<const Potential> potential;
    DissipationModel dissipation;
    SystemState initial;
    std::shared_ptr<const NeoHookeanChain1D> chain;  // chain scenes only
    int dim = 1;
};

BuiltScene build_scene(const SceneConfig& config);

}  // namespace asearch
