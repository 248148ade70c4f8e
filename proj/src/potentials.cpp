#include "asearch/potentials.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace asearch {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------- springs

QuadraticSpring::QuadraticSpring(double k, double rest) : k_(k), rest_(rest) {
    if (k <= 0.0) throw std::invalid_argument("spring stiffness must be positive");
}

double QuadraticSpring::energy(const Vec& x) const {
    return 0.5 * k_ * (x.array() - rest_).square().sum();
}

Vec QuadraticSpring::gradient(const Vec& x) const { return k_ * (x.array() - rest_).matrix(); }

Mat QuadraticSpring::hessian(const Vec& x) const {
    return k_ * Mat::Identity(x.size(), x.size());
}

OneSidedQuadraticBarrier::OneSidedQuadraticBarrier(double k, int orientation)
    : k_(k), orientation_(orientation >= 0 ? 1 : -1) {
    if (k <= 0.0) throw std::invalid_argument("barrier stiffness must be positive");
}

double OneSidedQuadraticBarrier::energy(const Vec& x) const {
    double e = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (active(x[i])) e += 0.5 * k_ * x[i] * x[i];
    return e;
}

Vec OneSidedQuadraticBarrier::gradient(const Vec& x) const {
    Vec g = Vec::Zero(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (active(x[i])) g[i] = k_ * x[i];
    return g;
}

Mat OneSidedQuadraticBarrier::hessian(const Vec& x) const {
    Mat h = Mat::Zero(x.size(), x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (active(x[i])) h(i, i) = k_;
    return h;
}

// ------------------------------------------------------------- log barrier

IpcBarrier1D::IpcBarrier1D(double kappa, double dhat, double wall, int side)
    : kappa_(kappa), dhat_(dhat), wall_(wall), side_(side >= 0 ? 1.0 : -1.0) {
    if (kappa <= 0.0 || dhat <= 0.0)
        throw std::invalid_argument("barrier stiffness and threshold must be positive");
}

namespace {

// b(d), b'(d), b''(d) for b = -kappa (u-1)^2 log u, u = d/dhat, on 0 < d < dhat.
double barrier_value(double kappa, double dhat, double d) {
    double u = d / dhat;
    double um1 = u - 1.0;
    return -kappa * um1 * um1 * std::log(u);
}

double barrier_d1(double kappa, double dhat, double d) {
    double u = d / dhat;
    double um1 = u - 1.0;
    return -kappa * (2.0 * um1 * std::log(u) + um1 * um1 / u) / dhat;
}

double barrier_d2(double kappa, double dhat, double d) {
    double u = d / dhat;
    double um1 = u - 1.0;
    double t = 2.0 * std::log(u) + 2.0 * um1 / u + (u * u - 1.0) / (u * u);
    return -kappa * t / (dhat * dhat);
}

}  // namespace

double IpcBarrier1D::energy(const Vec& x) const {
    double e = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        double d = distance(x[i]);
        if (d <= 0.0) return kInf;
        if (d < dhat_) e += barrier_value(kappa_, dhat_, d);
    }
    return e;
}

Vec IpcBarrier1D::gradient(const Vec& x) const {
    Vec g = Vec::Zero(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        double d = distance(x[i]);
        if (d > 0.0 && d < dhat_) g[i] = side_ * barrier_d1(kappa_, dhat_, d);
    }
    return g;
}

Mat IpcBarrier1D::hessian(const Vec& x) const {
    Mat h = Mat::Zero(x.size(), x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        double d = distance(x[i]);
        if (d > 0.0 && d < dhat_) h(i, i) = barrier_d2(kappa_, dhat_, d);
    }
    return h;
}

Vec ipc_normal_force_weights(const Vec& x, const IpcBarrier1D& barrier) {
    if (!barrier.feasible(x)) throw std::domain_error("infeasible state");
    return barrier.gradient(x).cwiseAbs();
}

// ------------------------------------------------------------ 1D chain

NeoHookeanChain1D::NeoHookeanChain1D(int node_count, double rest_element_length,
                                     double youngs_modulus, Vec lumped_masses)
    : nodes_(node_count), rest_(rest_element_length), youngs_(youngs_modulus),
      masses_(std::move(lumped_masses)) {
    if (nodes_ < 2) throw std::invalid_argument("chain needs at least two nodes");
    if (rest_ <= 0.0 || youngs_ <= 0.0)
        throw std::invalid_argument("chain rest length and modulus must be positive");
    if (masses_.size() != nodes_ || (masses_.array() <= 0.0).any())
        throw std::invalid_argument("chain masses must be positive, one per node");
}

NeoHookeanChain1D NeoHookeanChain1D::uniform(int element_count, double length, double total_mass,
                                             double youngs_modulus) {
    if (element_count < 1) throw std::invalid_argument("need at least one element");
    int n = element_count + 1;
    double per_element = total_mass / element_count;
    Vec m = Vec::Constant(n, per_element);
    m[0] = 0.5 * per_element;
    m[n - 1] = 0.5 * per_element;
    return NeoHookeanChain1D(n, length / element_count, youngs_modulus, m);
}

double NeoHookeanChain1D::energy(const Vec& x) const {
    double e = 0.0;
    for (int i = 0; i + 1 < nodes_; ++i) {
        double f = (x[i + 1] - x[i]) / rest_;
        if (f <= 0.0) return kInf;
        e += rest_ * 0.25 * youngs_ * (f * f - 1.0 - 2.0 * std::log(f));
    }
    return e;
}

Vec NeoHookeanChain1D::gradient(const Vec& x) const {
    Vec g = Vec::Zero(nodes_);
    for (int i = 0; i + 1 < nodes_; ++i) {
        double f = (x[i + 1] - x[i]) / rest_;
        double stress = 0.5 * youngs_ * (f - 1.0 / f);  // d(psi)/dF
        g[i] -= stress;
        g[i + 1] += stress;
    }
    return g;
}

Mat NeoHookeanChain1D::hessian(const Vec& x) const {
    Mat h = Mat::Zero(nodes_, nodes_);
    for (int i = 0; i + 1 < nodes_; ++i) {
        double f = (x[i + 1] - x[i]) / rest_;
        double k = 0.5 * youngs_ * (1.0 + 1.0 / (f * f)) / rest_;  // always positive
        h(i, i) += k;
        h(i + 1, i + 1) += k;
        h(i, i + 1) -= k;
        h(i + 1, i) -= k;
    }
    return h;
}

Vec NeoHookeanChain1D::rest_shape_centered() const {
    Vec r(nodes_);
    for (int i = 0; i < nodes_; ++i) r[i] = i * rest_;
    double com = masses_.dot(r) / masses_.sum();
    return r.array() - com;
}

// ------------------------------------------------------------- gravity

Gravity::Gravity(double g, const Vec& masses, int dim, int axis) {
    if (dim < 1 || axis < 0 || axis >= dim) throw std::invalid_argument("bad gravity axis");
    weight_ = Vec::Zero(masses.size() * dim);
    for (Eigen::Index i = 0; i < masses.size(); ++i) weight_[i * dim + axis] = masses[i] * g;
}

double Gravity::energy(const Vec& x) const { return weight_.dot(x); }
Vec Gravity::gradient(const Vec& x) const {
    (void)x;
    return weight_;
}
Mat Gravity::hessian(const Vec& x) const { return Mat::Zero(x.size(), x.size()); }

// --------------------------------------------------------- central spring

CentralSpring2D::CentralSpring2D(double k, double rest_radius, Vec2 pivot)
    : k_(k), r0_(rest_radius), pivot_(pivot) {
    if (k <= 0.0 || rest_radius <= 0.0)
        throw std::invalid_argument("central spring parameters must be positive");
}

double CentralSpring2D::energy(const Vec& x) const {
    double e = 0.0;
    for (Eigen::Index j = 0; j + 1 < x.size(); j += 2) {
        Vec2 p(x[j] - pivot_[0], x[j + 1] - pivot_[1]);
        double r = p.norm();
        e += 0.5 * k_ * (r - r0_) * (r - r0_);
    }
    return e;
}

Vec CentralSpring2D::gradient(const Vec& x) const {
    Vec g = Vec::Zero(x.size());
    for (Eigen::Index j = 0; j + 1 < x.size(); j += 2) {
        Vec2 p(x[j] - pivot_[0], x[j + 1] - pivot_[1]);
        double r = p.norm();
        if (r == 0.0) continue;  // gradient undefined at the pivot; treat as stationary
        Vec2 gj = k_ * (r - r0_) / r * p;
        g[j] += gj[0];
        g[j + 1] += gj[1];
    }
    return g;
}

namespace {

Mat2 central_block(double k, double r0, const Vec2& p, bool clamp) {
    double r = p.norm();
    Mat2 h;
    if (r == 0.0) {
        h = k * Mat2::Identity();
        return h;
    }
    Vec2 n = p / r;
    double tangential = k * (1.0 - r0 / r);
    if (clamp && tangential < 0.0) tangential = 0.0;
    h = k * (n * n.transpose()) + tangential * (Mat2::Identity() - n * n.transpose());
    return h;
}

}  // namespace

Mat CentralSpring2D::hessian(const Vec& x) const {
    Mat h = Mat::Zero(x.size(), x.size());
    for (Eigen::Index j = 0; j + 1 < x.size(); j += 2) {
        Vec2 p(x[j] - pivot_[0], x[j + 1] - pivot_[1]);
        h.block<2, 2>(j, j) += central_block(k_, r0_, p, false);
    }
    return h;
}

Mat CentralSpring2D::hessian_psd(const Vec& x) const {
    Mat h = Mat::Zero(x.size(), x.size());
    for (Eigen::Index j = 0; j + 1 < x.size(); j += 2) {
        Vec2 p(x[j] - pivot_[0], x[j + 1] - pivot_[1]);
        h.block<2, 2>(j, j) += central_block(k_, r0_, p, true);
    }
    return h;
}

// ------------------------------------------------------ pseudo-potentials

RayleighDampingPseudoPotential::RayleighDampingPseudoPotential(double mu, Mat k_psd, Vec anchor,
                                                               double h)
    : mu_(mu), h_(h), k_(std::move(k_psd)), anchor_(std::move(anchor)) {
    if (mu < 0.0 || h <= 0.0) throw std::invalid_argument("bad damping parameters");
}

double RayleighDampingPseudoPotential::energy(const Vec& x) const {
    Vec d = x - anchor_;
    return 0.5 * mu_ / h_ * d.dot(k_ * d);
}

Vec RayleighDampingPseudoPotential::gradient(const Vec& x) const {
    return mu_ / h_ * (k_ * (x - anchor_));
}

Mat RayleighDampingPseudoPotential::hessian(const Vec& x) const {
    (void)x;
    return mu_ / h_ * k_;
}

RayleighDampingPseudoPotential build_rayleigh(double mu, const Potential& base, const Vec& x_n,
                                              double h) {
    Mat k = mu == 0.0 ? Mat::Zero(x_n.size(), x_n.size()) : psd_clamp(base.hessian(x_n));
    return RayleighDampingPseudoPotential(mu, std::move(k), x_n, h);
}

CoulombFrictionPseudoPotential::CoulombFrictionPseudoPotential(double mu, Vec lambda, Vec anchor,
                                                               double h)
    : mu_(mu), h_(h), lambda_(std::move(lambda)), anchor_(std::move(anchor)) {
    if (mu < 0.0 || h <= 0.0) throw std::invalid_argument("bad friction parameters");
    if ((lambda_.array() < 0.0).any())
        throw std::invalid_argument("friction weights must be nonnegative");
}

double CoulombFrictionPseudoPotential::energy(const Vec& x) const {
    Vec d = x - anchor_;
    return 0.5 * mu_ / h_ * d.cwiseProduct(lambda_).dot(d);
}

Vec CoulombFrictionPseudoPotential::gradient(const Vec& x) const {
    return mu_ / h_ * lambda_.cwiseProduct(x - anchor_);
}

Mat CoulombFrictionPseudoPotential::hessian(const Vec& x) const {
    Mat h = Mat::Zero(x.size(), x.size());
    h.diagonal() = mu_ / h_ * lambda_;
    return h;
}

}  // namespace asearch
