#pragma once

#include <complex>
#include <string>
#include <vector>

#include "asearch/types.hpp"

namespace asearch {

// Butcher coefficients (A, b). The abscissae c = A e are implied.
struct Tableau {
    Mat A;
    Vec b;
    std::string name;

    int stages() const { return static_cast<int>(b.size()); }
};

// Symmetric adjoint (e b^T - A, b). Stage order is not reflected; the
// determinant formulas below are permutation-invariant.
Tableau adjoint(const Tableau& t);

// True iff diag(b) A + A^T diag(b) - b b^T vanishes to tol in the max norm.
bool is_symplectic(const Tableau& t, double tol = 1e-12);

// R(z) = det(I + z A_adj) / det(I - z A). Throws std::domain_error at poles.
std::complex<double> stability_function(const Tableau& t, std::complex<double> z);

namespace tableaux {

Tableau explicit_euler();
Tableau implicit_euler();
Tableau implicit_midpoint();
Tableau trapezoidal();
Tableau sdirk2();  // gamma = 1 - 1/sqrt(2), stiffly accurate, L-stable

const std::vector<Tableau>& catalog();
Tableau by_name(const std::string& name);

}  // namespace tableaux

}  // namespace asearch
