#include "asearch/scene.hpp"

#include <cmath>
#include <stdexcept>

namespace asearch {

SceneKind scene_kind_from_name(const std::string& name) {
    if (name == "harmonic") return SceneKind::harmonic;
    if (name == "point_collision") return SceneKind::point_collision;
    if (name == "chain_collision") return SceneKind::chain_collision;
    if (name == "central_orbit") return SceneKind::central_orbit;
    if (name == "free_chain") return SceneKind::free_chain;
    throw ConfigError("unknown scene kind: " + name);
}

namespace {

IntegratorSpec read_integrator(ConfigReader& r) {
    IntegratorSpec spec;
    spec.kind = method_from_name(r.text_or("integrator", "kind", "implicit_euler"));
    spec.theta = r.number_or("integrator", "theta", 1.0);
    spec.alpha_min = r.number_or("integrator", "alpha_min", 0.0);
    spec.alpha_max = r.number_or("integrator", "alpha_max", 1.1);
    spec.sparse_search = r.flag_or("integrator", "sparse_search", false);
    spec.e0_factor = r.number_or("integrator", "e0_factor", 1.0);
    if (r.has("integrator", "decay_tau")) {
        DecaySpec decay;
        decay.tau = r.number("integrator", "decay_tau");
        decay.ground = r.number_or("integrator", "decay_ground", 0.0);
        decay.start_time = r.number_or("integrator", "decay_start", 0.0);
        spec.decay = decay;
    }
    return spec;
}

void read_dissipation(ConfigReader& r, SceneConfig& c) {
    if (r.has("damping", "mu")) {
        c.damping_kind = r.text_or("damping", "kind", "rayleigh");
        c.damping_mu = r.number("damping", "mu");
        if (c.damping_kind != "rayleigh" && c.damping_kind != "drag")
            throw ConfigError("damping kind must be rayleigh or drag");
    }
    if (r.has("friction", "mu")) c.friction_mu = r.number("friction", "mu");
    if (c.damping_mu != 0.0 && c.friction_mu != 0.0)
        throw ConfigError("choose either damping or friction, not both");
}

void read_barrier(ConfigReader& r, SceneConfig& c) {
    c.barrier_kind = r.text_or("barrier", "kind", "ipc");
    if (c.barrier_kind != "ipc" && c.barrier_kind != "quadratic")
        throw ConfigError("barrier kind must be ipc or quadratic");
    c.kappa = r.number_or("barrier", "kappa", 1e5);
    c.dhat = r.number_or("barrier", "dhat", 1e-3);
    c.wall = r.number_or("barrier", "wall", 0.0);
    c.barrier_stiffness = r.number_or("barrier", "stiffness", 1.0);
}

void read_chain_material(ConfigReader& r, SceneConfig& c) {
    c.element_count = static_cast<int>(r.integer_or("material", "element_count", 30));
    c.length = r.number_or("material", "length", 1.0);
    c.total_mass = r.number_or("material", "total_mass", 10.0);
    if (r.has("material", "wave_speed")) {
        double cspeed = r.number("material", "wave_speed");
        c.youngs_modulus = (c.total_mass / c.length) * cspeed * cspeed;
    } else {
        c.youngs_modulus = r.number_or("material", "youngs_modulus", 10.0);
    }
}

}  // namespace

SceneConfig SceneConfig::from_raw(const RawConfig& raw) {
    ConfigReader r(raw);
    SceneConfig c;
    c.kind = scene_kind_from_name(r.text("scene", "kind"));
    c.h = r.number("scene", "h");
    c.duration = r.number("scene", "duration");
    c.snapshot_stride = r.integer_or("scene", "snapshot_stride", 0);
    if (c.h <= 0.0) throw ConfigError("h must be positive");
    if (c.duration < 0.0) throw ConfigError("duration must be nonnegative");
    c.integrator = read_integrator(r);

    switch (c.kind) {
        case SceneKind::harmonic:
            c.stiffness = r.number_or("material", "stiffness", 1.0);
            c.mass = r.number_or("material", "mass", 1.0);
            c.x0 = r.number_or("initial", "x0", 1.0);
            c.v0 = r.number_or("initial", "v0", 0.0);
            break;
        case SceneKind::point_collision:
            c.mass = r.number_or("material", "mass", 1.0);
            read_barrier(r, c);
            c.gap = r.number_or("initial", "gap", 0.25);
            c.velocity = r.number_or("initial", "velocity", -1.0);
            break;
        case SceneKind::chain_collision:
            read_chain_material(r, c);
            read_barrier(r, c);
            read_dissipation(r, c);
            if (c.barrier_kind != "ipc")
                throw ConfigError("chain_collision uses the ipc barrier");
            c.gap = r.number_or("initial", "gap", 0.25);
            c.velocity = r.number_or("initial", "velocity", -1.0);
            break;
        case SceneKind::central_orbit:
            c.stiffness = r.number_or("material", "stiffness", 1.0);
            c.mass = r.number_or("material", "mass", 1.0);
            c.rest_radius = r.number_or("material", "rest_radius", 1.0);
            c.radius = r.number_or("initial", "radius", 1.5);
            c.tangential_velocity = r.number_or("initial", "tangential_velocity", 0.0);
            break;
        case SceneKind::free_chain:
            read_chain_material(r, c);
            read_dissipation(r, c);
            c.velocity = r.number_or("initial", "velocity", 0.0);
            c.mode_index = static_cast<int>(r.integer_or("initial", "mode_index", 0));
            c.mode_amplitude = r.number_or("initial", "mode_amplitude", 0.0);
            break;
    }
    r.finish();
    return c;
}

SceneConfig SceneConfig::chain_preset(const std::string& name, double h, Method method) {
    SceneConfig c;
    c.kind = SceneKind::chain_collision;
    c.h = h;
    c.duration = 5.0;
    c.element_count = 30;
    c.length = 1.0;
    c.total_mass = 10.0;
    c.barrier_kind = "ipc";
    c.kappa = 1e5;
    c.dhat = 1e-3;
    c.wall = 0.0;
    c.gap = 0.25;
    c.velocity = -1.0;
    c.integrator.kind = method;

    double wave_speed;
    if (name == "soft" || name == "damped_soft") wave_speed = 1.0;
    else if (name == "medium") wave_speed = 10.0;
    else if (name == "stiff") wave_speed = 100.0;
    else throw std::invalid_argument("unknown chain preset: " + name);
    c.youngs_modulus = (c.total_mass / c.length) * wave_speed * wave_speed;

    if (name == "damped_soft") {
        c.damping_kind = "rayleigh";
        c.damping_mu = 0.05;
    }
    return c;
}

BuiltScene build_scene(const SceneConfig& c) {
    switch (c.kind) {
        case SceneKind::harmonic: {
            BuiltScene s{MassMatrix::uniform(1, c.mass),
                         std::make_shared<QuadraticSpring>(c.stiffness, 0.0),
                         {},
                         {},
                         nullptr,
                         1};
            s.initial.x = Vec::Constant(1, c.x0);
            s.initial.v = Vec::Constant(1, c.v0);
            return s;
        }
        case SceneKind::point_collision: {
            std::shared_ptr<const Potential> barrier;
            if (c.barrier_kind == "ipc")
                barrier = std::make_shared<IpcBarrier1D>(c.kappa, c.dhat, c.wall, +1);
            else
                barrier = std::make_shared<OneSidedQuadraticBarrier>(c.barrier_stiffness, -1);
            BuiltScene s{MassMatrix::uniform(1, c.mass), barrier, {}, {}, nullptr, 1};
            s.initial.x = Vec::Constant(1, c.wall + c.gap);
            s.initial.v = Vec::Constant(1, c.velocity);
            return s;
        }
        case SceneKind::chain_collision: {
            auto chain = std::make_shared<NeoHookeanChain1D>(NeoHookeanChain1D::uniform(
                c.element_count, c.length, c.total_mass, c.youngs_modulus));
            auto barrier = std::make_shared<IpcBarrier1D>(c.kappa, c.dhat, c.wall, +1);
            auto composite = std::make_shared<CompositePotential>();
            composite->add(chain);
            composite->add(barrier);

            BuiltScene s{MassMatrix(chain->masses()), composite, {}, {}, chain, 1};
            int n = chain->nodes();
            s.initial.x = Vec(n);
            for (int i = 0; i < n; ++i)
                s.initial.x[i] = c.wall + c.gap + i * chain->rest_element_length();
            s.initial.v = Vec::Constant(n, c.velocity);

            if (c.damping_mu != 0.0) {
                s.dissipation.kind = c.damping_kind == "drag" ? DissipationModel::Kind::drag
                                                              : DissipationModel::Kind::rayleigh;
                s.dissipation.mu = c.damping_mu;
                s.dissipation.rayleigh_base = chain;
            } else if (c.friction_mu != 0.0) {
                s.dissipation.kind = DissipationModel::Kind::coulomb;
                s.dissipation.mu = c.friction_mu;
                s.dissipation.contact = barrier;
            }
            return s;
        }
        case SceneKind::central_orbit: {
            BuiltScene s{MassMatrix::uniform(2, c.mass),
                         std::make_shared<CentralSpring2D>(c.stiffness, c.rest_radius,
                                                           Vec2(0.0, 0.0)),
                         {},
                         {},
                         nullptr,
                         2};
            double vt = c.tangential_velocity;
            if (vt == 0.0) {
                if (c.radius <= c.rest_radius)
                    throw ConfigError("circular balance needs radius > rest_radius");
                vt = std::sqrt(c.stiffness * (c.radius - c.rest_radius) * c.radius / c.mass);
            }
            s.initial.x = Vec(2);
            s.initial.x << c.radius, 0.0;
            s.initial.v = Vec(2);
            s.initial.v << 0.0, vt;
            return s;
        }
        case SceneKind::free_chain: {
            auto chain = std::make_shared<NeoHookeanChain1D>(NeoHookeanChain1D::uniform(
                c.element_count, c.length, c.total_mass, c.youngs_modulus));
            BuiltScene s{MassMatrix(chain->masses()), chain, {}, {}, chain, 1};
            int n = chain->nodes();
            s.initial.x = Vec(n);
            for (int i = 0; i < n; ++i) s.initial.x[i] = i * chain->rest_element_length();
            s.initial.v = Vec::Constant(n, c.velocity);

            if (c.mode_amplitude != 0.0) {
                Mat k = chain->hessian(s.initial.x);
                Mat m = Mat::Zero(n, n);
                m.diagonal() = chain->masses();
                Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(k, m);
                int idx = c.mode_index;
                if (idx < 1 || idx >= n) throw ConfigError("mode_index out of range");
                s.initial.x += c.mode_amplitude * es.eigenvectors().col(idx);
            }
            if (c.damping_mu != 0.0) {
                s.dissipation.kind = c.damping_kind == "drag" ? DissipationModel::Kind::drag
                                                              : DissipationModel::Kind::rayleigh;
                s.dissipation.mu = c.damping_mu;
                s.dissipation.rayleigh_base = chain;
            }
            return s;
        }
    }
    throw std::logic_error("unhandled scene kind");
}

}  // namespace asearch
