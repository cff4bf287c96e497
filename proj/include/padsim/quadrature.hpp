#pragma once

#include <functional>
#include <vector>

// Gauss-Legendre quadrature with cached node tables, plus the adaptive
// order-doubling driver used for the acceptance-disk integrals.

namespace padsim::quadrature {

struct rule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;  // sum to 2
};

// Nodes/weights of the order-point Gauss-Legendre rule (Newton on the
// Legendre recurrence).  Cached; safe to call concurrently.
const rule& gauss_legendre(int order);

// Integral of f over [a, b] with a fixed-order rule.
double integrate(const std::function<double(double)>& f, double a, double b, int order);

struct adaptive_result {
    double value = 0.0;
    int order = 0;        // order that met the tolerance
    bool converged = false;
};

// Doubles the order from initial_order until two successive estimates agree
// to rel_tol (relative to the latest estimate, absolute floor abs_floor),
// capped at max_order.
adaptive_result integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                   int initial_order, double rel_tol, int max_order = 2048,
                                   double abs_floor = 1e-300);

// Tensor-product rule over [ax, bx] x [ay, by].
double integrate_2d(const std::function<double(double, double)>& f, double ax, double bx,
                    double ay, double by, int order);

}  // namespace padsim::quadrature
