#include "asearch/integrators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace asearch {

std::string method_name(Method m) {
    switch (m) {
        case Method::explicit_euler: return "explicit_euler";
        case Method::implicit_euler: return "implicit_euler";
        case Method::theta_inner: return "theta_inner";
        case Method::theta_outer: return "theta_outer";
        case Method::midpoint: return "midpoint";
        case Method::trapezoidal: return "trapezoidal";
        case Method::bdf2: return "bdf2";
        case Method::symplectic_euler: return "symplectic_euler";
        case Method::a1: return "a1";
        case Method::asearch: return "asearch";
        case Method::blending: return "blending";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    for (Method m : {Method::explicit_euler, Method::implicit_euler, Method::theta_inner,
                     Method::theta_outer, Method::midpoint, Method::trapezoidal, Method::bdf2,
                     Method::symplectic_euler, Method::a1, Method::asearch, Method::blending})
        if (method_name(m) == name) return m;
    throw std::invalid_argument("unknown integrator: " + name);
}

void IntegratorSpec::validate() const {
    if (!(alpha_min <= 1.0 && 1.0 <= alpha_max))
        throw std::invalid_argument("alpha range must contain 1");
    if (theta < 0.0 || theta > 1.0) throw std::invalid_argument("theta must be in [0,1]");
    if (decay && decay->tau <= 0.0) throw std::invalid_argument("decay tau must be positive");
    if (!(e0_factor > 0.0 && e0_factor <= 1.0))
        throw std::invalid_argument("e0_factor must be in (0,1]");
}

std::shared_ptr<const Potential> DissipationModel::make_step_potential(const Vec& x_n,
                                                                       const MassMatrix& m,
                                                                       double h) const {
    if (!active()) return nullptr;
    switch (kind) {
        case Kind::rayleigh: {
            if (!rayleigh_base) throw std::invalid_argument("rayleigh damping needs a base potential");
            return std::make_shared<RayleighDampingPseudoPotential>(
                build_rayleigh(mu, *rayleigh_base, x_n, h));
        }
        case Kind::coulomb: {
            if (!contact) throw std::invalid_argument("coulomb friction needs a contact barrier");
            Vec lambda = ipc_normal_force_weights(x_n, *contact);
            return std::make_shared<CoulombFrictionPseudoPotential>(mu, std::move(lambda), x_n, h);
        }
        case Kind::drag:
            // mass-weighted velocity drag: g = -mu M v under the implicit
            // velocity substitution
            return std::make_shared<CoulombFrictionPseudoPotential>(mu, m.diag, x_n, h);
        case Kind::none: break;
    }
    return nullptr;
}

double update_energy_target(double target, double friction_loss, const IntegratorSpec& spec,
                            double h, double t_now) {
    double adjusted = target - friction_loss;
    if (spec.decay && t_now >= spec.decay->start_time) {
        double eg = spec.decay->ground;
        return eg + std::exp(-h / spec.decay->tau) * (adjusted - eg);
    }
    return adjusted;
}

namespace {

struct AlphaChoice {
    double alpha = 1.0;
    bool clipped = false;
};

// Root of H(alpha) = a alpha^2 - b alpha + h0 = target closer to 1, clipped
// to [amin, amax]. Ties pick the smaller root; an unreachable target (no
// real root) falls back to the vertex, which minimizes |H - target|.
AlphaChoice choose_alpha(double a, double b, double h0, double target, double amin, double amax) {
    AlphaChoice c;
    double on_target_tol = 1e-9 * std::max(1.0, std::abs(target));
    if (a <= 0.0) {
        // dv = 0: H does not depend on alpha
        if (std::abs(h0 - target) <= on_target_tol) return {1.0, false};
        return {target > h0 ? amax : amin, true};
    }
    double disc = b * b - 4.0 * a * (h0 - target);
    if (disc < 0.0) {
        c.alpha = b / (2.0 * a);
        c.clipped = true;
    } else {
        double s = std::sqrt(disc);
        double q = 0.5 * (b + std::copysign(s, b));
        double r1, r2;
        if (q == 0.0) {
            r1 = r2 = 0.0;
        } else {
            r1 = q / a;
            r2 = (h0 - target) / q;
        }
        double d1 = std::abs(r1 - 1.0), d2 = std::abs(r2 - 1.0);
        if (d1 < d2) c.alpha = r1;
        else if (d2 < d1) c.alpha = r2;
        else c.alpha = std::min(r1, r2);
    }
    if (c.alpha < amin) {
        c.alpha = amin;
        c.clipped = true;
    } else if (c.alpha > amax) {
        c.alpha = amax;
        c.clipped = true;
    }
    return c;
}

int side_of(double value, double reference) {
    double tol = 1e-12 * std::max(1.0, std::abs(reference));
    if (value > reference + tol) return 1;
    if (value < reference - tol) return -1;
    return 0;
}

}  // namespace

StepDiagnostics step_decoupled_alpha(SystemState& state, const MassMatrix& m, const Potential& p,
                                     const Potential* friction, double h, double alpha,
                                     const NewtonSettings& settings) {
    IncrementalObjective obj(m, state.x + h * state.v);
    obj.add_term(&p, h * h);
    if (friction) obj.add_term(friction, h * h);
    auto [x1, report] = minimize(obj, state.x, settings, settings.step_tolerance_scale * h);
    if (!report.converged)
        throw SolverError("implicit solve did not converge", report.final_step_norm);

    Vec w = (x1 - state.x) / h;
    Vec dv = h * m.solve(p.gradient(state.x) - p.gradient(x1));
    state.v = w - alpha * dv;
    state.x = std::move(x1);
    state.t += h;

    StepDiagnostics diag;
    diag.alpha_used = alpha;
    diag.newton_iters = report.iterations;
    diag.friction_loss = friction ? 2.0 * friction->energy(state.x) : 0.0;
    diag.energy_after = p.energy(state.x) + kinetic_energy(state.v, m);
    return diag;
}

Mat2 decoupled_linear_update(const Tableau& t, double hbar) {
    Mat2 q;
    if (hbar <= 0.0) {
        q << 1.0, 1.0, 0.0, 1.0;  // free flight at h = 1
        return q;
    }
    double w = std::sqrt(hbar);
    std::complex<double> z(0.0, w);
    std::complex<double> rf = stability_function(t, z);
    std::complex<double> rs = stability_function(adjoint(t), z);
    q << rf.real(), rf.imag() / w, -w * rs.imag(), rs.real();
    return q;
}

// ----------------------------------------------------------------- Stepper

Stepper::Stepper(IntegratorSpec spec, MassMatrix mass, std::shared_ptr<const Potential> potential,
                 DissipationModel dissipation, NewtonSettings newton)
    : spec_(std::move(spec)), mass_(std::move(mass)), potential_(std::move(potential)),
      dissipation_(std::move(dissipation)), newton_(newton) {
    spec_.validate();
    if (!potential_) throw std::invalid_argument("null potential");
    if (dissipation_.active() &&
        (spec_.kind == Method::explicit_euler || spec_.kind == Method::symplectic_euler ||
         spec_.kind == Method::blending))
        throw std::invalid_argument("dissipation pseudo-potentials need an implicit position solve");
    if (spec_.kind == Method::blending && spec_.decay)
        throw std::invalid_argument("blending tracks a fixed energy target");
}

void Stepper::reset(SystemState& state) {
    double h0 = total_energy(state, mass_, *potential_);
    state.energy_target = spec_.e0_factor * h0;
    state.friction_loss = 0.0;
    energy_ceiling_ = h0;
    history_ = {};
    target_side_window_.clear();
    initialized_ = true;
}

void Stepper::seed_history(Vec x_prev, Vec v_prev) {
    history_ = {std::move(x_prev), std::move(v_prev), true};
}

StepDiagnostics Stepper::advance(SystemState& state, double h) {
    if (h <= 0.0) throw std::invalid_argument("step size must be positive");
    if (!initialized_) reset(state);
    switch (spec_.kind) {
        case Method::explicit_euler: return step_explicit_euler(state, h);
        case Method::implicit_euler: return step_theta(state, h, 1.0, false);
        case Method::theta_inner:
            return spec_.theta == 0.0 ? step_explicit_euler(state, h)
                                      : step_theta(state, h, spec_.theta, true);
        case Method::theta_outer:
            return spec_.theta == 0.0 ? step_explicit_euler(state, h)
                                      : step_theta(state, h, spec_.theta, false);
        case Method::midpoint: return step_theta(state, h, 0.5, true);
        case Method::trapezoidal: return step_theta(state, h, 0.5, false);
        case Method::bdf2: return step_bdf2(state, h);
        case Method::symplectic_euler: return step_symplectic_euler(state, h);
        case Method::a1: return step_alpha_family(state, h, false);
        case Method::asearch: return step_alpha_family(state, h, true);
        case Method::blending: return step_blending(state, h);
    }
    throw std::logic_error("unhandled method");
}

Stepper::PositionSolve Stepper::solve_incremental(const SystemState& state, double h,
                                                  double weight, const Vec& target_point) {
    PositionSolve out;
    out.friction = dissipation_.make_step_potential(state.x, mass_, h);
    IncrementalObjective obj(mass_, target_point);
    obj.add_term(potential_.get(), weight);
    if (out.friction) obj.add_term(out.friction.get(), weight);
    auto [x1, report] = minimize(obj, state.x, newton_, newton_.step_tolerance_scale * h);
    if (!report.converged)
        throw SolverError("implicit solve did not converge", report.final_step_norm);
    out.x = std::move(x1);
    out.newton_iters = report.iterations;
    return out;
}

StepDiagnostics Stepper::finish(SystemState& state, StepDiagnostics diag, double h) {
    state.t += h;
    diag.energy_after = potential_->energy(state.x) + kinetic_energy(state.v, mass_);
    diag.target = state.energy_target;
    return diag;
}

StepDiagnostics Stepper::step_explicit_euler(SystemState& state, double h) {
    StepDiagnostics diag;
    Vec g = potential_->gradient(state.x);
    Vec x1 = state.x + h * state.v;
    state.v -= h * mass_.solve(g);
    state.x = std::move(x1);
    if (!potential_->feasible(state.x)) throw SolverError("explicit step crossed a barrier", 0.0);
    return finish(state, diag, h);
}

StepDiagnostics Stepper::step_symplectic_euler(SystemState& state, double h) {
    StepDiagnostics diag;
    state.v -= h * mass_.solve(potential_->gradient(state.x));
    state.x += h * state.v;
    if (!potential_->feasible(state.x)) throw SolverError("symplectic step crossed a barrier", 0.0);
    return finish(state, diag, h);
}

StepDiagnostics Stepper::step_theta(SystemState& state, double h, double theta, bool inner) {
    StepDiagnostics diag;
    // The velocity is recovered from the position relation
    // x' = x + h ((1-theta) v + theta v') rather than re-summing forces,
    // which cancels catastrophically at large stiffness.
    if (inner) {
        // z' = z + h f((1-theta) z + theta z'); solve for the quadrature
        // point y = (1-theta) x + theta x'.
        auto sol = solve_incremental(state, h, theta * theta * h * h,
                                     state.x + theta * h * state.v);
        diag.newton_iters = sol.newton_iters;
        if (sol.friction) diag.friction_loss = 2.0 * sol.friction->energy(sol.x);
        Vec dx = (sol.x - state.x) / theta;  // x' - x
        state.v = (dx / h - (1.0 - theta) * state.v) / theta;
        state.x += dx;
    } else {
        // z' = z + h [(1-theta) f(z) + theta f(z')]; the anchored dissipation
        // pseudo-potential has zero gradient at x_n, so only P enters g0.
        Vec g0 = potential_->gradient(state.x);
        Vec b = state.x + h * state.v - theta * (1.0 - theta) * h * h * mass_.solve(g0);
        auto sol = solve_incremental(state, h, theta * theta * h * h, b);
        diag.newton_iters = sol.newton_iters;
        if (sol.friction) diag.friction_loss = 2.0 * sol.friction->energy(sol.x);
        state.v = ((sol.x - state.x) / h - (1.0 - theta) * state.v) / theta;
        state.x = std::move(sol.x);
    }
    state.friction_loss = diag.friction_loss;
    return finish(state, diag, h);
}

StepDiagnostics Stepper::step_bdf2(SystemState& state, double h) {
    Vec x_prev = state.x, v_prev = state.v;
    if (!history_.valid) {
        StepDiagnostics diag = step_theta(state, h, 1.0, false);
        history_ = {std::move(x_prev), std::move(v_prev), true};
        return diag;
    }
    StepDiagnostics diag;
    Vec dx = (state.x - history_.x_prev) / 3.0;
    Vec dv = (state.v - history_.v_prev) / 3.0;
    Vec b = state.x + dx + (2.0 / 3.0) * h * (state.v + dv);
    auto sol = solve_incremental(state, h, 4.0 / 9.0 * h * h, b);
    diag.newton_iters = sol.newton_iters;
    if (sol.friction) diag.friction_loss = 2.0 * sol.friction->energy(sol.x);
    // velocity from the position relation x' = x + dx + (2h/3) v'
    state.v = (sol.x - state.x - dx) * (3.0 / (2.0 * h));
    state.x = std::move(sol.x);
    history_ = {std::move(x_prev), std::move(v_prev), true};
    state.friction_loss = diag.friction_loss;
    return finish(state, diag, h);
}

StepDiagnostics Stepper::step_alpha_family(SystemState& state, double h, bool search) {
    StepDiagnostics diag;
    double target = update_energy_target(state.energy_target, state.friction_loss, spec_, h,
                                         state.t);

    auto sol = solve_incremental(state, h, h * h, state.x + h * state.v);
    diag.newton_iters = sol.newton_iters;
    double efric = sol.friction ? 2.0 * sol.friction->energy(sol.x) : 0.0;

    Vec w = (sol.x - state.x) / h;
    // Correction acts on the conservative forces only; friction stays in the
    // implicit solve but is excluded here.
    Vec dv = h * mass_.solve(potential_->gradient(state.x) - potential_->gradient(sol.x));
    double pe1 = potential_->energy(sol.x);
    double raw_target = target - efric;

    double a = 0.5 * mass_.norm_sq(dv);
    double b = mass_.dot(w, dv);
    double h_at_zero = pe1 + 0.5 * mass_.norm_sq(w);
    double h_at_one = h_at_zero - b + a;

    double alpha = 1.0;
    bool clipped = false;
    if (search) {
        bool engage = true;
        if (spec_.sparse_search) {
            int side_now = side_of(h_at_one, raw_target);
            engage = target_side_window_.size() >= 2 && side_now != 0 &&
                     target_side_window_[0] == side_now && target_side_window_[1] == side_now;
        }
        if (engage) {
            // Energy-raising corrections are capped by the highest energy the
            // trajectory has actually attained; reductions are unrestricted.
            double effective = std::min(raw_target, energy_ceiling_);
            AlphaChoice choice = choose_alpha(a, b, h_at_zero, effective, spec_.alpha_min,
                                              spec_.alpha_max);
            alpha = choice.alpha;
            clipped = choice.clipped || effective < raw_target;
        } else {
            alpha = 1.0;
            clipped = side_of(h_at_one, raw_target) != 0;
        }
    }

    state.v = w - alpha * dv;
    state.x = std::move(sol.x);
    state.energy_target = target;
    state.friction_loss = efric;

    double achieved = pe1 + kinetic_energy(state.v, mass_);
    if (spec_.sparse_search && search) {
        target_side_window_.push_front(side_of(achieved, raw_target));
        while (target_side_window_.size() > 2) target_side_window_.pop_back();
    }
    energy_ceiling_ = std::max(energy_ceiling_, achieved);

    state.t += h;
    diag.alpha_used = alpha;
    diag.clipped = clipped;
    diag.friction_loss = efric;
    diag.target = raw_target;
    diag.energy_after = achieved;
    return diag;
}

StepDiagnostics Stepper::step_blending(SystemState& state, double h) {
    StepDiagnostics diag;
    double target = state.energy_target;

    // Implicit Euler branch.
    auto imp = solve_incremental(state, h, h * h, state.x + h * state.v);
    Vec x_imp = imp.x;
    Vec v_imp = (x_imp - state.x) / h;

    // Implicit midpoint branch (solve for the quadrature point y).
    auto mid = solve_incremental(state, h, 0.25 * h * h, state.x + 0.5 * h * state.v);
    Vec x_mid = 2.0 * mid.x - state.x;
    Vec v_mid = state.v - h * mass_.solve(potential_->gradient(mid.x));
    diag.newton_iters = imp.newton_iters + mid.newton_iters;

    auto energy_at = [&](double alpha) {
        Vec x = alpha * x_mid + (1.0 - alpha) * x_imp;
        Vec v = alpha * v_mid + (1.0 - alpha) * v_imp;
        double pe = potential_->energy(x);
        return pe + kinetic_energy(v, mass_);
    };

    double tol = 1e-10 * std::max(1.0, std::abs(target));
    double f0 = energy_at(0.0) - target;
    double f1 = energy_at(1.0) - target;

    double alpha;
    bool clipped = false;
    double lo = 0.0, hi = 1.0, flo = f0, fhi = f1;
    bool bracketed = (flo <= 0.0 && fhi >= 0.0) || (flo >= 0.0 && fhi <= 0.0);
    if (!bracketed) {
        double f2 = energy_at(2.0) - target;
        bool monotone = (f0 < f1 && f1 < f2) || (f0 > f1 && f1 > f2);
        if (monotone && ((f1 <= 0.0 && f2 >= 0.0) || (f1 >= 0.0 && f2 <= 0.0))) {
            lo = 1.0;
            hi = 2.0;
            flo = f1;
            fhi = f2;
            bracketed = true;
        }
    }
    if (bracketed) {
        // orient so f(lo) <= 0 <= f(hi); infinite trial values count as high
        if (flo > 0.0) {
            std::swap(lo, hi);
            std::swap(flo, fhi);
        }
        if (std::abs(flo) <= tol) {
            alpha = lo;
        } else if (std::isfinite(fhi) && std::abs(fhi) <= tol) {
            alpha = hi;
        } else {
            alpha = 0.5 * (lo + hi);
            for (int it = 0; it < 60; ++it) {
                alpha = 0.5 * (lo + hi);
                double fm = energy_at(alpha) - target;
                if (std::isfinite(fm) && std::abs(fm) <= tol) break;
                if (fm < 0.0) lo = alpha;
                else hi = alpha;
            }
        }
    } else {
        // No conserving interpolation exists; take the closer endpoint.
        double a0 = std::isfinite(f0) ? std::abs(f0) : std::numeric_limits<double>::infinity();
        double a1 = std::isfinite(f1) ? std::abs(f1) : std::numeric_limits<double>::infinity();
        alpha = a1 < a0 ? 1.0 : 0.0;
        clipped = true;
    }

    state.x = alpha * x_mid + (1.0 - alpha) * x_imp;
    state.v = alpha * v_mid + (1.0 - alpha) * v_imp;
    // Interpolation can leave the feasible set (the midpoint branch is not
    // stiffly accurate); report it, never repair it.
    diag.blend_infeasible = !potential_->feasible(x_mid) || !potential_->feasible(state.x);
    diag.alpha_used = alpha;
    diag.clipped = clipped;
    return finish(state, diag, h);
}

}  // namespace asearch
