#include "asearch/tableau.hpp"

#include <cmath>
#include <stdexcept>

namespace asearch {

Tableau adjoint(const Tableau& t) {
    Mat ones = Mat::Ones(t.stages(), 1) * t.b.transpose();
    return Tableau{ones - t.A, t.b, t.name + "*"};
}

bool is_symplectic(const Tableau& t, double tol) {
    Mat db = t.b.asDiagonal();
    Mat m = db * t.A + t.A.transpose() * db - t.b * t.b.transpose();
    return m.cwiseAbs().maxCoeff() <= tol;
}

std::complex<double> stability_function(const Tableau& t, std::complex<double> z) {
    const int s = t.stages();
    Eigen::MatrixXcd a = t.A.cast<std::complex<double>>();
    Eigen::MatrixXcd a_adj = adjoint(t).A.cast<std::complex<double>>();
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(s, s);

    std::complex<double> den = (id - z * a).determinant();
    double coeff = std::max(1.0, t.A.cwiseAbs().maxCoeff());
    double scale = std::pow(std::max(1.0, std::abs(z) * coeff), s);
    if (std::abs(den) < 1e-14 * scale) throw std::domain_error("pole of R");

    std::complex<double> num = (id + z * a_adj).determinant();
    return num / den;
}

namespace tableaux {

Tableau explicit_euler() {
    Tableau t{Mat::Zero(1, 1), Vec::Ones(1), "explicit_euler"};
    return t;
}

Tableau implicit_euler() {
    Tableau t{Mat::Ones(1, 1), Vec::Ones(1), "implicit_euler"};
    return t;
}

Tableau implicit_midpoint() {
    Tableau t{Mat::Constant(1, 1, 0.5), Vec::Ones(1), "midpoint"};
    return t;
}

Tableau trapezoidal() {
    Mat a(2, 2);
    a << 0.0, 0.0, 0.5, 0.5;
    Vec b(2);
    b << 0.5, 0.5;
    return Tableau{a, b, "trapezoidal"};
}

Tableau sdirk2() {
    double g = 1.0 - 1.0 / std::sqrt(2.0);
    Mat a(2, 2);
    a << g, 0.0, 1.0 - g, g;
    Vec b(2);
    b << 1.0 - g, g;
    return Tableau{a, b, "sdirk2"};
}

const std::vector<Tableau>& catalog() {
    static const std::vector<Tableau> all = {explicit_euler(), implicit_euler(),
                                             implicit_midpoint(), trapezoidal(), sdirk2()};
    return all;
}

Tableau by_name(const std::string& name) {
    for (const auto& t : catalog())
        if (t.name == name) return t;
    throw std::invalid_argument("unknown tableau: " + name);
}

}  // namespace tableaux

}  // namespace asearch
