#include "asearch/linear_analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "asearch/potentials.hpp"

namespace asearch {

std::pair<double, double> LinearUpdateMatrix::eigen_magnitudes() const {
    double tr = Q.trace();
    double de = Q.determinant();
    double disc = tr * tr - 4.0 * de;
    if (disc <= 0.0) {
        double m = std::sqrt(std::max(de, 0.0));
        return {m, m};
    }
    double s = std::sqrt(disc);
    double a = std::abs(0.5 * (tr + s));
    double b = std::abs(0.5 * (tr - s));
    return {std::max(a, b), std::min(a, b)};
}

bool LinearUpdateMatrix::complex_eigenvalues() const {
    double tr = Q.trace();
    return tr * tr - 4.0 * Q.determinant() < 0.0;
}

LinearMethodSpec LinearMethodSpec::parse(const std::string& name, double alpha) {
    LinearMethodSpec s;
    s.alpha = alpha;
    if (name == "explicit_euler") s.kind = Kind::explicit_euler;
    else if (name == "implicit_euler") s.kind = Kind::implicit_euler;
    else if (name == "symplectic_euler") s.kind = Kind::symplectic_euler;
    else if (name == "midpoint") s.kind = Kind::midpoint;
    else if (name == "trapezoidal") s.kind = Kind::trapezoidal;
    else if (name == "a1") { s.kind = Kind::a_alpha; s.alpha = 1.0; }
    else if (name == "a_alpha") s.kind = Kind::a_alpha;
    else if (name.rfind("decoupled:", 0) == 0) {
        s.kind = Kind::decoupled;
        s.tableau = name.substr(10);
        tableaux::by_name(s.tableau);  // validate early
    } else {
        throw std::invalid_argument("unknown linear method: " + name);
    }
    return s;
}

std::string LinearMethodSpec::label() const {
    switch (kind) {
        case Kind::explicit_euler: return "explicit_euler";
        case Kind::implicit_euler: return "implicit_euler";
        case Kind::symplectic_euler: return "symplectic_euler";
        case Kind::midpoint: return "midpoint";
        case Kind::trapezoidal: return "trapezoidal";
        case Kind::a_alpha: return alpha == 1.0 ? "a1" : "a_alpha";
        case Kind::decoupled: return "decoupled:" + tableau;
    }
    return "?";
}

namespace {

// One integrator step on the normalized linear problem (k = hbar, m = 1,
// h = 1) through the production stepping paths.
Vec2 linear_step(const LinearMethodSpec& method, double hbar, const Vec2& z) {
    SystemState s;
    s.x = Vec::Constant(1, z[0]);
    s.v = Vec::Constant(1, z[1]);

    MassMatrix m = MassMatrix::uniform(1, 1.0);
    if (hbar <= 0.0) throw std::invalid_argument("hbar must be positive");
    auto spring = std::make_shared<QuadraticSpring>(hbar, 0.0);

    NewtonSettings settings;
    if (method.kind == LinearMethodSpec::Kind::a_alpha) {
        step_decoupled_alpha(s, m, *spring, nullptr, 1.0, method.alpha, settings);
    } else {
        IntegratorSpec spec;
        switch (method.kind) {
            case LinearMethodSpec::Kind::explicit_euler: spec.kind = Method::explicit_euler; break;
            case LinearMethodSpec::Kind::implicit_euler: spec.kind = Method::implicit_euler; break;
            case LinearMethodSpec::Kind::symplectic_euler:
                spec.kind = Method::symplectic_euler;
                break;
            case LinearMethodSpec::Kind::midpoint: spec.kind = Method::midpoint; break;
            case LinearMethodSpec::Kind::trapezoidal: spec.kind = Method::trapezoidal; break;
            default: throw std::logic_error("linear_step: unexpected method");
        }
        Stepper stepper(spec, m, spring);
        stepper.advance(s, 1.0);
    }
    return Vec2(s.x[0], s.v[0]);
}

}  // namespace

LinearUpdateMatrix build_update_matrix(const LinearMethodSpec& method, double hbar) {
    LinearUpdateMatrix out;
    out.hbar = hbar;
    out.method = method.label();
    if (method.kind == LinearMethodSpec::Kind::a_alpha) out.alpha = method.alpha;

    if (method.kind == LinearMethodSpec::Kind::decoupled) {
        out.Q = decoupled_linear_update(tableaux::by_name(method.tableau), hbar);
        return out;
    }
    Vec2 c0 = linear_step(method, hbar, Vec2(1.0, 0.0));
    Vec2 c1 = linear_step(method, hbar, Vec2(0.0, 1.0));
    out.Q.col(0) = c0;
    out.Q.col(1) = c1;
    return out;
}

Mat2 closed_form_symplectic_euler(double hbar) {
    Mat2 q;
    q << 1.0 - hbar, 1.0, -hbar, 1.0;
    return q;
}

Mat2 closed_form_midpoint(double hbar) {
    double d = 1.0 + 0.25 * hbar;
    Mat2 q;
    q << (1.0 - 0.25 * hbar) / d, 1.0 / d, -hbar / d, (1.0 - 0.25 * hbar) / d;
    return q;
}

Mat2 closed_form_alpha(double hbar, double alpha) {
    double d = 1.0 + hbar;
    Mat2 q;
    q << 1.0 / d, 1.0 / d, -hbar * (1.0 + alpha * hbar) / d, (1.0 + alpha * hbar) / d;
    return q;
}

std::vector<StabilityRow> stability_report(const std::vector<LinearMethodSpec>& methods,
                                           const std::vector<double>& hbar_grid,
                                           const std::vector<double>& alpha_grid) {
    std::vector<StabilityRow> rows;
    for (const auto& method : methods) {
        std::vector<double> alphas = {method.alpha};
        if (method.kind == LinearMethodSpec::Kind::a_alpha && !alpha_grid.empty())
            alphas = alpha_grid;
        for (double alpha : alphas) {
            LinearMethodSpec m = method;
            m.alpha = alpha;
            for (double hbar : hbar_grid) {
                LinearUpdateMatrix q = build_update_matrix(m, hbar);
                auto [l1, l2] = q.eigen_magnitudes();
                StabilityRow row;
                row.method = m.label();
                row.hbar = hbar;
                row.alpha = alpha;
                row.tr = q.trace();
                row.det = q.det();
                row.lambda1 = l1;
                row.lambda2 = l2;
                row.flagged = l1 > 1.0 + 1e-9;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

std::vector<double> logspace(double lo_exp, double hi_exp, int n) {
    std::vector<double> out;
    if (n <= 0) return out;
    if (n == 1) return {std::pow(10.0, lo_exp)};
    out.reserve(n);
    for (int i = 0; i < n; ++i)
        out.push_back(std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / (n - 1)));
    return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out;
    if (n <= 0) return out;
    if (n == 1) return {lo};
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
    return out;
}

}  // namespace asearch
