#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asearch/integrators.hpp"
#include "asearch/types.hpp"

namespace asearch {

// A one-step method reduced to its 2x2 update on the 1-dof linear problem,
// at dimensionless stiffness hbar = h^2 k / m.
struct LinearUpdateMatrix {
    Mat2 Q;
    double hbar = 0.0;
    std::string method;
    std::optional<double> alpha;

    double trace() const { return Q.trace(); }
    double det() const { return Q.determinant(); }
    // Eigenvalue magnitudes, larger first.
    std::pair<double, double> eigen_magnitudes() const;
    bool complex_eigenvalues() const;
};

// Methods addressable in the linear lab. "decoupled:<tableau>" builds the
// decoupled symplectic method from the named catalog tableau via stability
// functions; "a_alpha" is the decoupled alpha family (alpha required).
struct LinearMethodSpec {
    enum class Kind {
        explicit_euler,
        implicit_euler,
        symplectic_euler,
        midpoint,
        trapezoidal,
        a_alpha,
        decoupled,
    };
    Kind kind = Kind::implicit_euler;
    double alpha = 1.0;        // a_alpha only
    std::string tableau;       // decoupled only

    static LinearMethodSpec parse(const std::string& name, double alpha = 1.0);
    std::string label() const;
};

// Assembles Q by running one integrator step on the unit basis states of the
// 1-dof linear problem (k = hbar, m = 1, h = 1), except for decoupled
// tableau methods which use the stability-function construction.
LinearUpdateMatrix build_update_matrix(const LinearMethodSpec& method, double hbar);

// Closed forms for the same normalization.
Mat2 closed_form_symplectic_euler(double hbar);
Mat2 closed_form_midpoint(double hbar);
Mat2 closed_form_alpha(double hbar, double alpha);

struct StabilityRow {
    std::string method;
    double hbar = 0.0;
    double alpha = 1.0;
    double tr = 0.0;
    double det = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    bool flagged = false;  // |lambda| > 1 + 1e-9
};

std::vector<StabilityRow> stability_report(const std::vector<LinearMethodSpec>& methods,
                                           const std::vector<double>& hbar_grid,
                                           const std::vector<double>& alpha_grid);

// Grid helpers: n values, logarithmic in base 10 or linear, inclusive ends.
std::vector<double> logspace(double lo_exp, double hi_exp, int n);
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace asearch
