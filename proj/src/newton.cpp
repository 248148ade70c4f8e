#include "asearch/newton.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace asearch {

IncrementalObjective::IncrementalObjective(const MassMatrix& m, Vec target)
    : m_(m), target_(std::move(target)) {}

void IncrementalObjective::add_term(const Potential* p, double weight) {
    if (p != nullptr && weight != 0.0) terms_.emplace_back(p, weight);
}

double IncrementalObjective::value(const Vec& x) const {
    Vec d = x - target_;
    double v = 0.5 * m_.norm_sq(d);
    for (const auto& [p, w] : terms_) {
        double e = p->energy(x);
        if (!std::isfinite(e)) return e;
        v += w * e;
    }
    return v;
}

Vec IncrementalObjective::gradient(const Vec& x) const {
    Vec g = m_.apply(x - target_);
    for (const auto& [p, w] : terms_) g += w * p->gradient(x);
    return g;
}

Mat IncrementalObjective::hessian(const Vec& x) const {
    Mat h = Mat::Zero(x.size(), x.size());
    h.diagonal() = m_.diag;
    for (const auto& [p, w] : terms_) h += w * p->hessian_psd(x);
    return h;
}

std::pair<Vec, SolveReport> minimize(const Objective& objective, Vec x0,
                                     const NewtonSettings& settings, double step_tolerance) {
    SolveReport report;
    double f = objective.value(x0);
    if (!std::isfinite(f)) throw std::domain_error("infeasible initial point");

    Vec x = std::move(x0);
    for (int it = 0; it < settings.max_iterations; ++it) {
        Vec g = objective.gradient(x);
        Mat h = objective.hessian(x);

        Eigen::LDLT<Mat> ldlt(h);
        Vec d = ldlt.solve(-g);
        if (ldlt.info() != Eigen::Success || !d.allFinite()) {
            double reg = 1e-12 * std::max(1.0, h.diagonal().maxCoeff());
            ldlt.compute(h + reg * Mat::Identity(h.rows(), h.cols()));
            d = ldlt.solve(-g);
            if (!d.allFinite()) break;
        }

        double step_norm = d.lpNorm<Eigen::Infinity>();
        report.iterations = it + 1;
        report.final_step_norm = step_norm;

        if (step_norm <= step_tolerance) {
            // Polish to the quadratic floor. The decoupled velocity
            // correction evaluates force differences at the solution, so a
            // merely step-tolerant point injects curvature-amplified noise;
            // a few more contracting Newton steps are nearly free.
            report.converged = true;
            double prev_norm = step_norm;
            for (int polish = 0; polish < 30; ++polish) {
                Vec trial = x + d;
                double ft = objective.value(trial);
                double slack = 8.0 * std::numeric_limits<double>::epsilon() *
                               std::max(1.0, std::abs(f));
                if (!std::isfinite(ft) || ft > f + slack) break;
                x = std::move(trial);
                f = ft;
                Eigen::LDLT<Mat> refine(objective.hessian(x));
                d = refine.solve(-objective.gradient(x));
                if (refine.info() != Eigen::Success || !d.allFinite()) break;
                double n = d.lpNorm<Eigen::Infinity>();
                ++report.iterations;
                report.final_step_norm = n;
                if (n == 0.0 || n >= prev_norm) break;  // reached the floor
                prev_norm = n;
            }
            break;
        }

        // Backtracking: halve while infeasible, then while Armijo fails.
        double slope = g.dot(d);
        double t = 1.0;
        bool accepted = false;
        bool stationary = false;
        for (int ls = 0; ls < 64; ++ls) {
            Vec trial = x + t * d;
            double ft = objective.value(trial);
            if (std::isfinite(ft) && ft <= f + settings.armijo * t * slope) {
                // A bitwise-frozen accept means no representable point
                // improves the objective along this direction: the iterate
                // is stationary at machine resolution.
                stationary = (trial - x).cwiseAbs().maxCoeff() == 0.0;
                x = std::move(trial);
                f = ft;
                accepted = true;
                break;
            }
            t *= settings.line_search_shrink;
            ++report.halvings;
        }
        if (stationary) {
            report.converged = true;
            break;
        }
        if (!accepted) break;
    }
    return {x, report};
}

}  // namespace asearch
