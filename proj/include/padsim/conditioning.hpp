#pragma once

#include <complex>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "padsim/fock.hpp"

// The conditional detector proper: per-component conditional amplitudes for
// a joint homodyne outcome (x, y), acceptance-disk integration, fidelity of
// the post-selected ensemble, and the rate/fidelity trade-off.

namespace padsim::conditioning {

struct pad_config {
    int p = 1;                                       // auxiliary photon number
    double omega = std::numbers::pi / 4;             // beam-splitter angle
    double lambda = std::numbers::pi / 2;            // phase on the signal mode
    double theta = 0.0;                              // LO phase, x-quadrature detector
    double phi = 0.0;                                // LO phase, y-quadrature detector
    double delta = 0.1;                              // acceptance radius
    double eta = 1.0;                                // homodyne efficiency, both detectors
    int max_total_photons = fock::default_max_total_photons;

    // theta and phi only enter through this combination (and a global phase).
    double effective_lambda() const { return lambda - theta + phi; }
};

void validate(const pad_config& cfg);

// Benchmark input: sum over n of |a_n>|n> with equal weights, n running over
// a window of half-width w around p, clipped at n = 0.  The a_n labels are
// orthonormal flags and are never expanded.
struct test_ensemble {
    int p = 1;
    int w = 2;
    std::vector<int> labels;  // max(0, p-w) .. p+w

    static test_ensemble make(int p, int w);
    double component_weight() const { return 1.0 / static_cast<double>(labels.size()); }
};

// Everything the post-selection produces for one (ensemble, config) pair.
struct conditional_result {
    std::map<int, double> weights;  // unnormalized post-selected weight per label
    double p_delta = 0.0;           // sum of weights; probability a shot is accepted
    double fidelity = 0.0;          // weights[p] / p_delta (ratio limit at delta = 0)
    double rate = 0.0;              // p_delta / p_ideal
    double p_ideal = 0.0;           // ideal-counter success probability on the ensemble
    bool symmetric_fast_path = true;  // false when the angular probe forced 2-D quadrature
};

// Per-component density as a function of (n, x, y); the integration engine is
// parameterized on this so the lossless and lossy paths share it.
using component_density = std::function<double(int n, double x, double y)>;

// Coefficient of |a_n, x, y> in the conditioned output: the double sum over
// (m, q) of  C(n,m) C(p,q) e^(i pi (p-q)) e^(i (m+q) lambda_eff)
//            c^(m+p-q) s^(n-m+q) H_(m+q)(x) H_(n+p-m-q)(y)
// times e^(-i (n+p) phi) e^(-(x^2+y^2)/2) / sqrt(n! p! pi 2^(n+p)),
// with lambda_eff = lambda - theta + phi.  Lossless path only (eta = 1).
std::complex<double> conditional_amplitude(int n, const pad_config& cfg, double x, double y);

// The 50:50, lambda = pi/2 amplitude kernel:
//   g(n, p) = sum C(n,m) C(p,q) i^(m-q) H_(m+q)(x) H_(n+p-m-q)(y).
// Exact integer arithmetic at the origin, so g(n != p, 0, 0) vanishes
// identically rather than to rounding noise.
std::complex<double> g_function(int n, int p, double x, double y);

// |g(n, p, origin)| for each requested n: zero for every n != p.
std::map<int, double> origin_vanishing_check(int p, const std::vector<int>& n_range);

// |conditional_amplitude|^2, evaluated through the g kernel in the standard
// 50:50 regime and through the general double sum otherwise.  Lossless.
double joint_density(int n, const pad_config& cfg, double x, double y);

// Weighted incoherent sum of per-component densities: the full outcome
// density of the ensemble (components add incoherently because the a_n are
// orthonormal).  Honors cfg.eta.
double ensemble_density(const test_ensemble& ens, const pad_config& cfg, double x, double y);

// Largest relative angular variation of the ensemble density over 32 angles
// at a fixed set of probe radii, measured against the densest probed point
// (a per-radius denominator would blow up on circles where the density has
// an exact zero).
double symmetry_probe(const test_ensemble& ens, const pad_config& cfg);

// Probability that an outcome lands inside the acceptance disk of radius
// cfg.delta: 2 pi * integral of the ensemble density * r dr when the probe
// certifies rotational symmetry, polar 2-D quadrature otherwise.
double p_delta(const test_ensemble& ens, const pad_config& cfg);

// Full post-selection: per-label weights, acceptance probability, fidelity,
// rate.  delta = 0 is the projective limit (fidelity from the density ratio
// at the origin).  Dispatches to the lossy density when cfg.eta < 1.
conditional_result post_select(const test_ensemble& ens, const pad_config& cfg);

// As post_select but with a caller-supplied per-component density.
conditional_result post_select_with_density(const test_ensemble& ens, const pad_config& cfg,
                                            const component_density& density);

// Smallest delta whose acceptance rate hits target_rate (bisection on the
// strictly increasing p_delta, tolerance 1e-9 on delta), and the fidelity
// there.  Throws unreachable_rate_error if no delta can reach the target.
std::pair<double, double> rate_constrained_fidelity(const test_ensemble& ens, pad_config cfg,
                                                    double target_rate);

// |F(w+1) - F(w)| for w = 0..w_max-1 at fixed cfg.delta: how quickly the
// fidelity stops caring about widening the input window.
std::vector<double> window_convergence(int p, const pad_config& cfg, int w_max);

// Relative angular variation above which the radial fast path is abandoned.
inline constexpr double symmetry_tolerance = 1e-8;

}  // namespace padsim::conditioning
