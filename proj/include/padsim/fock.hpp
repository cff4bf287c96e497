#pragma once

#include <complex>
#include <numbers>
#include <vector>

// Finite-dimensional Fock-space primitives: factorial/binomial combinatorics,
// harmonic-oscillator (Hermite) quadrature wavefunctions, and the two-mode
// beam-splitter-plus-phase transform used by the detection scheme.

namespace padsim::fock {

// Default truncation of the total photon number carried through a
// computation.  Covers every bundled figure with room to spare.
inline constexpr int default_max_total_photons = 24;

// Hard ceiling: beyond this the raw Hermite values and factorial scalings
// used internally leave the comfortable range of double precision.
inline constexpr int hard_max_total_photons = 60;

// ln(n!), relative error < 1e-13 for n <= 200.
double log_factorial(int n);

// Binomial coefficient C(u, v), 0 <= v <= u.  Exact integer arithmetic for
// u <= 60 (correctly rounded on conversion), log-domain beyond that.
double binomial(int u, int v);

// H_n(0): 0 for odd n, (-1)^(n/2) n!/(n/2)! for even n.
double hermite_at_zero(int n);

// Raw physicists' Hermite polynomials H_0..H_nmax at x.
// Overflows double precision once n and |x| are both large; callers stay
// within hard_max_total_photons where products remain representable.
std::vector<double> hermite_values(int nmax, double x);

// Normalized oscillator eigenfunctions phi_n(x) = H_n(x) e^(-x^2/2) /
// sqrt(sqrt(pi) 2^n n!) for n = 0..nmax, via the stable normalized
// recurrence phi_(n+1) = x sqrt(2/(n+1)) phi_n - sqrt(n/(n+1)) phi_(n-1).
std::vector<double> oscillator_values(int nmax, double x);

// <x_theta|n> = phi_n(x) e^(-i n theta): the amplitude a homodyne detector
// with local-oscillator phase theta assigns to the n-photon state.
std::complex<double> quadrature_overlap(int n, double x, double theta);

struct beamsplitter_params {
    double omega = std::numbers::pi / 4;   // reflectivity cos^2(omega)
    double lambda = std::numbers::pi / 2;  // phase shift on the signal mode
};

// Pure two-mode state with a fixed total photon count: amplitudes[j] is the
// coefficient of |j>_b |total-j>_c.
struct two_mode_state {
    int total = 0;
    std::vector<std::complex<double>> amplitudes;  // size total + 1

    std::complex<double> amplitude(int j, int k) const;
    double norm_squared() const;
};

// Output of mixing |n>_b |p>_c on the beam splitter, with the phase shift
// applied to mode b.  The coefficient of |j>_b |k>_c (j + k = n + p) sums
// every (m, q) splitting with m + q = j:
//   C(n,m) C(p,q) (-1)^(p-q) e^(i j lambda) c^(m+p-q) s^(n-m+q)
//     * sqrt(j! k!) / sqrt(n! p!),   c = cos(omega), s = sin(omega).
two_mode_state beamsplitter_output(int n, int p, const beamsplitter_params& bs);

}  // namespace padsim::fock
