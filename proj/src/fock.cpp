#include "padsim/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace padsim::fock {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

double log_factorial(int n) {
    require(n >= 0, "log_factorial: n must be >= 0");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double binomial(int u, int v) {
    require(u >= 0 && v >= 0 && v <= u, "binomial: need 0 <= v <= u");
    if (u > hard_max_total_photons)
        return std::exp(log_factorial(u) - log_factorial(v) - log_factorial(u - v));
    // multiplicative form; every intermediate is an exact integer
    v = std::min(v, u - v);
    unsigned __int128 acc = 1;
    for (int i = 1; i <= v; ++i) {
        acc = acc * static_cast<unsigned>(u - v + i);
        acc /= static_cast<unsigned>(i);
    }
    return static_cast<double>(acc);
}

double hermite_at_zero(int n) {
    require(n >= 0, "hermite_at_zero: n must be >= 0");
    if (n % 2 == 1) return 0.0;
    // H_n(0) = -2 (n-1) H_(n-2)(0), exact in double until ~2^53
    double h = 1.0;
    for (int k = 2; k <= n; k += 2) h *= -2.0 * (k - 1);
    return h;
}

std::vector<double> hermite_values(int nmax, double x) {
    require(nmax >= 0, "hermite_values: nmax must be >= 0");
    require(std::isfinite(x), "hermite_values: x must be finite");
    std::vector<double> h(nmax + 1);
    h[0] = 1.0;
    if (nmax >= 1) h[1] = 2.0 * x;
    for (int n = 1; n < nmax; ++n) h[n + 1] = 2.0 * x * h[n] - 2.0 * n * h[n - 1];
    return h;
}

std::vector<double> oscillator_values(int nmax, double x) {
    require(nmax >= 0, "oscillator_values: nmax must be >= 0");
    require(std::isfinite(x), "oscillator_values: x must be finite");
    std::vector<double> phi(nmax + 1);
    phi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-x * x / 2);
    if (nmax >= 1) phi[1] = std::numbers::sqrt2 * x * phi[0];
    for (int n = 1; n < nmax; ++n)
        phi[n + 1] = x * std::sqrt(2.0 / (n + 1)) * phi[n] - std::sqrt(n / (n + 1.0)) * phi[n - 1];
    return phi;
}

std::complex<double> quadrature_overlap(int n, double x, double theta) {
    require(n >= 0 && n <= hard_max_total_photons, "quadrature_overlap: n out of range");
    double mag = oscillator_values(n, x)[n];
    return mag * std::polar(1.0, -n * theta);
}

std::complex<double> two_mode_state::amplitude(int j, int k) const {
    if (j < 0 || k < 0 || j + k != total) return {0.0, 0.0};
    return amplitudes[j];
}

double two_mode_state::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s;
}

two_mode_state beamsplitter_output(int n, int p, const beamsplitter_params& bs) {
    require(n >= 0 && p >= 0, "beamsplitter_output: photon counts must be >= 0");
    require(n + p <= hard_max_total_photons, "beamsplitter_output: n + p too large");
    const int total = n + p;
    const double c = std::cos(bs.omega);
    const double s = std::sin(bs.omega);

    std::vector<double> cpow(total + 1), spow(total + 1);
    cpow[0] = spow[0] = 1.0;
    for (int i = 1; i <= total; ++i) {
        cpow[i] = cpow[i - 1] * c;
        spow[i] = spow[i - 1] * s;
    }

    two_mode_state out;
    out.total = total;
    out.amplitudes.assign(total + 1, {0.0, 0.0});
    for (int m = 0; m <= n; ++m) {
        for (int q = 0; q <= p; ++q) {
            const int j = m + q;
            const double sign = ((p - q) % 2 == 0) ? 1.0 : -1.0;  // e^(i pi (p-q)) exactly
            out.amplitudes[j] += binomial(n, m) * binomial(p, q) * sign *
                                 std::polar(1.0, j * bs.lambda) * cpow[m + p - q] * spow[n - m + q];
        }
    }
    for (int j = 0; j <= total; ++j) {
        const int k = total - j;
        out.amplitudes[j] *= std::exp(0.5 * (log_factorial(j) + log_factorial(k) -
                                             log_factorial(n) - log_factorial(p)));
        // flush denormal-scale residue from long alternating sums
        if (std::abs(out.amplitudes[j].real()) < 1e-300 && std::abs(out.amplitudes[j].imag()) < 1e-300)
            out.amplitudes[j] = {0.0, 0.0};
    }
    return out;
}

}  // namespace padsim::fock
