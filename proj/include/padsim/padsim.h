#ifndef PADSIM_H
#define PADSIM_H

/* C interface to the conditional photon-number detection simulator.
 *
 * The library models a detector built from an auxiliary p-photon state, a
 * beam splitter, and dual homodyne detection post-selected on outcomes that
 * land within radius delta of the origin.  All functions return a status
 * code; numerical outputs go through out-parameters.  The detector handle is
 * immutable after creation and safe to share across threads, except that
 * padsim_last_error reports the most recent failure per handle.
 */

#include <stddef.h>

#if defined(_WIN32)
#define PADSIM_API __declspec(dllexport)
#else
#define PADSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum padsim_status {
    PADSIM_OK = 0,
    PADSIM_ERR_INVALID_ARGUMENT = 1,  /* precondition violated */
    PADSIM_ERR_DEGENERATE = 2,        /* acceptance probability underflowed */
    PADSIM_ERR_UNREACHABLE_RATE = 3,  /* requested rate beyond the infinite-radius rate */
    PADSIM_ERR_FIDELITY_RANGE = 4,    /* no counter efficiency matches this fidelity */
    PADSIM_ERR_BUFFER_TOO_SMALL = 5,
    PADSIM_ERR_INTERNAL = 6,
} padsim_status;

/* Static name of a status code, e.g. "PADSIM_ERR_DEGENERATE". */
PADSIM_API const char* padsim_status_name(padsim_status status);

/* Library version, "major.minor.patch". */
PADSIM_API const char* padsim_version(void);

typedef struct padsim_params {
    int p;           /* target / auxiliary photon number */
    int w;           /* input-window half-width of the benchmark ensemble */
    double omega;    /* beam-splitter angle; reflectivity = cos^2(omega) */
    double lambda;   /* phase shift on the signal mode */
    double theta;    /* local-oscillator phase, x-quadrature detector */
    double phi;      /* local-oscillator phase, y-quadrature detector */
    double delta;    /* acceptance radius in the (x, y) outcome plane */
    double eta;      /* homodyne efficiency, both detectors, in (0, 1] */
    int max_total_photons;
} padsim_params;

/* Fills in the standard operating point: p=1, w=2, omega=pi/4, lambda=pi/2,
 * theta=phi=0, delta=0.1, eta=1, max_total_photons=24. */
PADSIM_API void padsim_params_init(padsim_params* params);

typedef struct padsim_detector padsim_detector;

/* Validates params and allocates a detector.  On success *out owns the
 * handle and must be released with padsim_detector_destroy. */
PADSIM_API padsim_status padsim_detector_create(const padsim_params* params,
                                                padsim_detector** out);
PADSIM_API void padsim_detector_destroy(padsim_detector* detector);

/* Message describing the handle's most recent failure ("" if none). */
PADSIM_API const char* padsim_last_error(const padsim_detector* detector);

/* ---- stateless queries ---------------------------------------------- */

/* |<x|n>|^2: the homodyne outcome density of the bare n-photon state. */
PADSIM_API padsim_status padsim_quadrature_density(int n, double x, double* out);

/* H_n(0). */
PADSIM_API padsim_status padsim_hermite_at_zero(int n, double* out);

/* g(n, p) at (x, y): the 50:50 amplitude kernel; re/im in out[0], out[1]. */
PADSIM_API padsim_status padsim_g_function(int n, int p, double x, double y, double out[2]);

/* Fidelity of an eta-efficient ideal counter heralding p on the benchmark
 * ensemble truncated at n_max. */
PADSIM_API padsim_status padsim_ideal_fidelity(int p, int n_max, double eta, double* out);

/* ---- detector queries ------------------------------------------------ */

/* Number of components in the detector's benchmark ensemble. */
PADSIM_API padsim_status padsim_label_count(const padsim_detector* detector, int* out);

/* The component labels, ascending.  buffer_len must be >= label count. */
PADSIM_API padsim_status padsim_labels(const padsim_detector* detector, int* buffer,
                                       int buffer_len);

/* Outcome density at (x, y) for signal component n; honors the detector's
 * efficiency. */
PADSIM_API padsim_status padsim_joint_density(padsim_detector* detector, int n, double x,
                                              double y, double* out);

/* Largest relative angular variation of the ensemble outcome density over
 * the probe grid; values above ~1e-8 mean acceptance integrals fall back to
 * 2-D quadrature. */
PADSIM_API padsim_status padsim_symmetry_probe(padsim_detector* detector, double* out);

/* Conditional amplitude of component n at (x, y); lossless detectors only.
 * re/im in out[0], out[1]. */
PADSIM_API padsim_status padsim_conditional_amplitude(padsim_detector* detector, int n,
                                                      double x, double y, double out[2]);

typedef struct padsim_result {
    double p_delta;   /* probability an outcome is accepted */
    double fidelity;  /* weight of the target component after acceptance */
    double rate;      /* p_delta / p_ideal */
    double p_ideal;   /* ideal-counter success probability on the ensemble */
    int symmetric_fast_path; /* 1 if the radial integration path was used */
} padsim_result;

/* Full post-selection at the detector's delta.  If weights is non-NULL it
 * receives the per-label unnormalized weights (weights_len >= label count). */
PADSIM_API padsim_status padsim_conditional_result(padsim_detector* detector,
                                                   padsim_result* result, double* weights,
                                                   int weights_len);

/* |F(w+1) - F(w)| for w = 0..w_max-1 at the detector's delta.
 * diffs_len must be >= w_max. */
PADSIM_API padsim_status padsim_window_convergence(padsim_detector* detector, int w_max,
                                                   double* diffs, int diffs_len);

/* Smallest delta reaching target_rate, and the fidelity there. */
PADSIM_API padsim_status padsim_rate_constrained_fidelity(padsim_detector* detector,
                                                          double target_rate,
                                                          double* delta_out,
                                                          double* fidelity_out);

/* Efficiency an ideal counter would need to match this detector's fidelity. */
PADSIM_API padsim_status padsim_equivalent_efficiency(padsim_detector* detector, double* out);

#ifdef __cplusplus
}
#endif

#endif /* PADSIM_H */
