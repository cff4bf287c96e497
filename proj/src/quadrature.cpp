#include "padsim/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace padsim::quadrature {

namespace {

// Legendre P_order and its derivative at x.
std::pair<double, double> legendre_with_derivative(int order, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= order; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    double d = order * (x * p1 - p0) / (x * x - 1.0);
    return {p1, d};
}

rule build_rule(int order) {
    rule r;
    r.nodes.resize(order);
    r.weights.resize(order);
    for (int i = 0; i < order / 2 + order % 2; ++i) {
        // Chebyshev-based initial guess, then Newton
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        for (int it = 0; it < 64; ++it) {
            auto [p, d] = legendre_with_derivative(order, x);
            double dx = p / d;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        auto [p, d] = legendre_with_derivative(order, x);
        (void)p;
        double w = 2.0 / ((1.0 - x * x) * d * d);
        r.nodes[i] = -x;  // ascending order
        r.weights[i] = w;
        r.nodes[order - 1 - i] = x;
        r.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) r.nodes[order / 2] = 0.0;
    return r;
}

}  // namespace

const rule& gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::mutex mutex;
    static std::map<int, rule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
    return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b, int order) {
    const rule& r = gauss_legendre(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < order; ++i) acc += r.weights[i] * f(mid + half * r.nodes[i]);
    return half * acc;
}

adaptive_result integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                   int initial_order, double rel_tol, int max_order,
                                   double abs_floor) {
    adaptive_result res;
    res.order = initial_order;
    res.value = integrate(f, a, b, initial_order);
    for (int order = 2 * initial_order; order <= max_order; order *= 2) {
        double next = integrate(f, a, b, order);
        double scale = std::max(std::abs(next), abs_floor);
        bool close = std::abs(next - res.value) <= rel_tol * scale;
        res.value = next;
        res.order = order;
        if (close) {
            res.converged = true;
            break;
        }
    }
    return res;
}

double integrate_2d(const std::function<double(double, double)>& f, double ax, double bx,
                    double ay, double by, int order) {
    const rule& r = gauss_legendre(order);
    const double mx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
    const double my = 0.5 * (ay + by), hy = 0.5 * (by - ay);
    double acc = 0.0;
    for (int i = 0; i < order; ++i) {
        double row = 0.0;
        const double x = mx + hx * r.nodes[i];
        for (int j = 0; j < order; ++j) row += r.weights[j] * f(x, my + hy * r.nodes[j]);
        acc += r.weights[i] * row;
    }
    return hx * hy * acc;
}

}  // namespace padsim::quadrature
