#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <string>

#include "asearch/newton.hpp"
#include "asearch/potential.hpp"
#include "asearch/potentials.hpp"
#include "asearch/tableau.hpp"
#include "asearch/types.hpp"

namespace asearch {

enum class Method {
    explicit_euler,
    implicit_euler,
    theta_inner,
    theta_outer,
    midpoint,      // inner theta = 1/2
    trapezoidal,   // outer theta = 1/2
    bdf2,
    symplectic_euler,
    a1,
    asearch,
    blending,
};

std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct DecaySpec {
    double tau = 1.0;        // e-folding time scale, > 0
    double ground = 0.0;     // ground energy level E_g
    double start_time = 0.0; // decay inactive before this time
};

struct IntegratorSpec {
    Method kind = Method::implicit_euler;
    double theta = 1.0;          // theta_inner / theta_outer only
    double alpha_min = 0.0;
    double alpha_max = 1.1;
    bool sparse_search = false;  // correct only after 3 consecutive same-side energies
    std::optional<DecaySpec> decay;
    double e0_factor = 1.0;      // initial target = e0_factor * H_0

    void validate() const;
};

struct StepDiagnostics {
    double alpha_used = 1.0;
    double energy_after = 0.0;
    double target = 0.0;        // enforced value E_n - friction loss of this step
    double friction_loss = 0.0; // 2 P_n(x_{n+1})
    int newton_iters = 0;
    bool clipped = false;
    bool blend_infeasible = false;
};

// Previous state for multistep methods. BDF2 bootstraps with one implicit
// Euler step while invalid.
struct History {
    Vec x_prev;
    Vec v_prev;
    bool valid = false;
};

// Builds the anchored dissipation pseudo-potential for one step, or null.
struct DissipationModel {
    enum class Kind { none, rayleigh, coulomb, drag };
    Kind kind = Kind::none;
    double mu = 0.0;
    std::shared_ptr<const Potential> rayleigh_base;  // frozen-Hessian source
    std::shared_ptr<const IpcBarrier1D> contact;     // normal-force weights source

    bool active() const { return kind != Kind::none && mu != 0.0; }
    std::shared_ptr<const Potential> make_step_potential(const Vec& x_n, const MassMatrix& m,
                                                         double h) const;
};

// Target update for the step about to be taken: consumes the previous step's
// friction loss, then applies exponential decay toward the ground level when
// active. Without decay this is E' = E - friction_loss.
double update_energy_target(double target, double friction_loss, const IntegratorSpec& spec,
                            double h, double t_now);

// One step of the decoupled alpha family with implicit Euler base and a fixed
// alpha: position from the incremental solve, velocity corrected by the
// scaled force difference. alpha = 1 is the A-1 method.
StepDiagnostics step_decoupled_alpha(SystemState& state, const MassMatrix& m, const Potential& p,
                                     const Potential* friction, double h, double alpha,
                                     const NewtonSettings& settings);

// 2x2 update matrix of the decoupled symplectic method built from a tableau,
// on the 1-dof linear test problem (normalized h = 1, m = 1, k = hbar).
// Valid for linear problems only.
Mat2 decoupled_linear_update(const Tableau& t, double hbar);

// Owns the per-simulation integrator state: multistep history, energy
// target/ceiling bookkeeping, and the sparse-search window.
class Stepper {
public:
    Stepper(IntegratorSpec spec, MassMatrix mass, std::shared_ptr<const Potential> potential,
            DissipationModel dissipation = {}, NewtonSettings newton = {});

    // Installs energy targets from the initial state. Must be called once
    // before stepping (run drivers do it; tests may call it directly).
    void reset(SystemState& state);

    // Multistep startup from a known earlier state instead of the implicit
    // Euler bootstrap.
    void seed_history(Vec x_prev, Vec v_prev);

    StepDiagnostics advance(SystemState& state, double h);

    const IntegratorSpec& spec() const { return spec_; }
    const MassMatrix& mass() const { return mass_; }
    const Potential& potential() const { return *potential_; }
    double energy_ceiling() const { return energy_ceiling_; }

private:
    struct PositionSolve {
        Vec x;
        std::shared_ptr<const Potential> friction;
        int newton_iters = 0;
    };

    PositionSolve solve_incremental(const SystemState& state, double h, double weight,
                                    const Vec& target_point);
    StepDiagnostics step_theta(SystemState& state, double h, double theta, bool inner);
    StepDiagnostics step_explicit_euler(SystemState& state, double h);
    StepDiagnostics step_symplectic_euler(SystemState& state, double h);
    StepDiagnostics step_bdf2(SystemState& state, double h);
    StepDiagnostics step_alpha_family(SystemState& state, double h, bool search);
    StepDiagnostics step_blending(SystemState& state, double h);
    StepDiagnostics finish(SystemState& state, StepDiagnostics diag, double h);

    IntegratorSpec spec_;
    MassMatrix mass_;
    std::shared_ptr<const Potential> potential_;
    DissipationModel dissipation_;
    NewtonSettings newton_;

    History history_;
    double energy_ceiling_ = 0.0;
    std::deque<int> target_side_window_;
    bool initialized_ = false;
};

// Thrown when an implicit solve fails to converge or an explicit update
// leaves the feasible set. Carries the residual step norm.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_ = 0.0;
};

}  // namespace asearch
