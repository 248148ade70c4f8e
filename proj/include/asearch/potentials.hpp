#pragma once

#include <memory>

#include "asearch/potential.hpp"

namespace asearch {

// 1/2 k (x_i - rest)^2 on every coordinate.
class QuadraticSpring final : public Potential {
public:
    QuadraticSpring(double k, double rest);

    double energy(const Vec& x) const override;
    Vec gradient(const Vec& x) const override;
    Mat hessian(const Vec& x) const override;
    Mat hessian_psd(const Vec& x) const override { return hessian(x); }

    double stiffness() const { return k_; }

private:
    double k_;
    double rest_;
};

// 1/2 k x^2 active on one side of the origin only (orientation +1: x > 0,
// orientation -1: x < 0). C1 at x = 0, finite everywhere.
class OneSidedQuadraticBarrier final : public Potential {
public:
    OneSidedQuadraticBarrier(double k, int orientation);

    double energy(const Vec& x) const override;
    Vec gradient(const Vec& x) const override;
    Mat hessian(const Vec& x) const override;
    Mat hessian_psd(const Vec& x) const override { return hessian(x); }

    bool active(double xi) const { return orientation_ > 0 ? xi > 0.0 : xi < 0.0; }
    double support_sign() const { return orientation_; }

private:
    double k_;
    int orientation_;
};

// Log-barrier wall: per coordinate, with distance d = side*(x_i - wall),
//   b(d) = -kappa (d/dhat - 1)^2 log(d/dhat)   for 0 < d < dhat
//          0                                   for d >= dhat
//          +inf                                for d <= 0.
// C2 at d = dhat, convex on (0, dhat).
class IpcBarrier1D final : public Potential {
public:
    IpcBarrier1D(double kappa, double dhat, double wall, int side);

    double energy(const Vec& x) const override;
    Vec gradient(const Vec& x) const override;
    Mat hessian(const Vec& x) const override;
    Mat hessian_psd(const Vec& x) const override { return hessian(x); }

    double distance(double xi) const { return side_ * (xi - wall_); }
    double kappa() const { return kappa_; }
    double dhat() const { return dhat_; }
    double wall() const { return wall_; }

private:
    double kappa_, dhat_, wall_;
    double side_;
};

// 1D Neo-Hookean chain of equal elements. Energy density per unit rest
// length is Psi(F) = (E/4)(F^2 - 1 - 2 log F) with stretch F, giving modulus
// E at rest and a log inversion barrier. Feasible iff every element length
// is strictly positive.
class NeoHookeanChain1D final : public Potential {
public:
    NeoHookeanChain1D(int node_count, double rest_element_length, double youngs_modulus,
                      Vec lumped_masses);

    // Lumped masses from a uniform linear density: half elements at the ends.
    static NeoHookeanChain1D uniform(int element_count, double length, double total_mass,
                                     double youngs_modulus);

    double energy(const Vec& x) const override;
    Vec gradient(const Vec& x) const override;
    Mat hessian(const Vec& x) const override;
    Mat hessian_psd(const Vec& x) const override { return hessian(x); }

    int nodes() const { return nodes_; }
    int elements() const { return nodes_ - 1; }
    double rest_element_length() const { return rest_; }
    double youngs_modulus() const { return youngs_; }
    const Vec& masses() const { return masses_; }
    double length() const { return rest_ * elements(); }

    // Node positions of the rest shape with its mass center at the origin.
    Vec rest_shape_centered() const;

private:
    int nodes_;
    double rest_;
    double youngs_;
    Vec masses_;
};

// Uniform gravity along one axis of interleaved coordinates.
class Gravity final : public Potential {
public:
    Gravity(double g, const Vec& masses, int dim, int axis);

    double energy(const Vec& x) const override;
    Vec gradient(const Vec& x) const override;
    Mat hessian(const Vec& x) const override;
    Mat hessian_psd(const Vec& x) const override { return hessian(x); }

private:
    Vec weight_;  // m_i * g on the selected coordinates, 0 elsewhere
};

// 1/2 k (|p - pivot| - r0)^2 for interleaved 2D points p.
class CentralSpring2D final : public Potential {
public:
    CentralSpring2D(double k, double rest_radius, Vec2 pivot);

    double energy(const Vec& x) const override;
    Vec gradient(const Vec& x) const override;
    Mat hessian(const Vec& x) const override;
    Mat hessian_psd(const Vec& x) const override;

private:
    double k_, r0_;
    Vec2 pivot_;
};

// Anchored quadratic pseudo-potential P_n(x) = (mu h / 2) ||(x - x_n)/h||^2_W
// substituting the implicit velocity (x - x_n)/h. W is either a frozen PSD
// stiffness matrix (Rayleigh damping) or a nonnegative diagonal weight
// (contact friction, mass-weighted drag).
class RayleighDampingPseudoPotential final : public Potential {
public:
    RayleighDampingPseudoPotential(double mu, Mat k_psd, Vec anchor, double h);

    double energy(const Vec& x) const override;
    Vec gradient(const Vec& x) const override;
    Mat hessian(const Vec& x) const override;
    Mat hessian_psd(const Vec& x) const override { return hessian(x); }

private:
    double mu_, h_;
    Mat k_;
    Vec anchor_;
};

class CoulombFrictionPseudoPotential final : public Potential {
public:
    CoulombFrictionPseudoPotential(double mu, Vec lambda, Vec anchor, double h);

    double energy(const Vec& x) const override;
    Vec gradient(const Vec& x) const override;
    Mat hessian(const Vec& x) const override;
    Mat hessian_psd(const Vec& x) const override { return hessian(x); }

private:
    double mu_, h_;
    Vec lambda_;
    Vec anchor_;
};

// Per-dof contact normal force magnitude |grad b| at x; zero outside dhat.
// Throws std::domain_error on infeasible x.
Vec ipc_normal_force_weights(const Vec& x, const IpcBarrier1D& barrier);

// Freeze the base potential's Hessian at x_n (clamped PSD) into a Rayleigh
// damping pseudo-potential for the step [t_n, t_n + h].
RayleighDampingPseudoPotential build_rayleigh(double mu, const Potential& base, const Vec& x_n,
                                              double h);

}  // namespace asearch
