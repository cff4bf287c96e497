#include "padsim/padsim.h"

#include <cstring>
#include <exception>
#include <string>

#include "padsim/conditioning.hpp"
#include "padsim/errors.hpp"
#include "padsim/fock.hpp"
#include "padsim/loss.hpp"

using padsim::conditioning::pad_config;
using padsim::conditioning::test_ensemble;

struct padsim_detector {
    pad_config cfg;
    test_ensemble ens;
    std::string last_error;
};

namespace {

padsim_status classify(const std::exception_ptr& eptr, std::string* message) {
    try {
        std::rethrow_exception(eptr);
    } catch (const padsim::degenerate_error& e) {
        if (message) *message = e.what();
        return PADSIM_ERR_DEGENERATE;
    } catch (const padsim::unreachable_rate_error& e) {
        if (message) *message = e.what();
        return PADSIM_ERR_UNREACHABLE_RATE;
    } catch (const padsim::fidelity_range_error& e) {
        if (message) *message = e.what();
        return PADSIM_ERR_FIDELITY_RANGE;
    } catch (const std::invalid_argument& e) {
        if (message) *message = e.what();
        return PADSIM_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        if (message) *message = e.what();
        return PADSIM_ERR_INTERNAL;
    } catch (...) {
        if (message) *message = "unknown error";
        return PADSIM_ERR_INTERNAL;
    }
}

template <typename Fn>
padsim_status guarded(std::string* message, Fn&& fn) {
    try {
        fn();
        if (message) message->clear();
        return PADSIM_OK;
    } catch (...) {
        return classify(std::current_exception(), message);
    }
}

pad_config config_from(const padsim_params& p) {
    pad_config cfg;
    cfg.p = p.p;
    cfg.omega = p.omega;
    cfg.lambda = p.lambda;
    cfg.theta = p.theta;
    cfg.phi = p.phi;
    cfg.delta = p.delta;
    cfg.eta = p.eta;
    cfg.max_total_photons = p.max_total_photons;
    return cfg;
}

}  // namespace

extern "C" {

const char* padsim_status_name(padsim_status status) {
    switch (status) {
        case PADSIM_OK: return "PADSIM_OK";
        case PADSIM_ERR_INVALID_ARGUMENT: return "PADSIM_ERR_INVALID_ARGUMENT";
        case PADSIM_ERR_DEGENERATE: return "PADSIM_ERR_DEGENERATE";
        case PADSIM_ERR_UNREACHABLE_RATE: return "PADSIM_ERR_UNREACHABLE_RATE";
        case PADSIM_ERR_FIDELITY_RANGE: return "PADSIM_ERR_FIDELITY_RANGE";
        case PADSIM_ERR_BUFFER_TOO_SMALL: return "PADSIM_ERR_BUFFER_TOO_SMALL";
        case PADSIM_ERR_INTERNAL: return "PADSIM_ERR_INTERNAL";
    }
    return "PADSIM_ERR_UNKNOWN";
}

const char* padsim_version(void) { return "1.0.0"; }

void padsim_params_init(padsim_params* params) {
    if (!params) return;
    pad_config defaults;
    params->p = defaults.p;
    params->w = 2;
    params->omega = defaults.omega;
    params->lambda = defaults.lambda;
    params->theta = defaults.theta;
    params->phi = defaults.phi;
    params->delta = defaults.delta;
    params->eta = defaults.eta;
    params->max_total_photons = defaults.max_total_photons;
}

padsim_status padsim_detector_create(const padsim_params* params, padsim_detector** out) {
    if (!params || !out) return PADSIM_ERR_INVALID_ARGUMENT;
    *out = nullptr;
    padsim_detector* det = nullptr;
    padsim_status st = guarded(nullptr, [&] {
        pad_config cfg = config_from(*params);
        padsim::conditioning::validate(cfg);
        test_ensemble ens = test_ensemble::make(params->p, params->w);
        if (ens.labels.back() + cfg.p > cfg.max_total_photons)
            throw std::invalid_argument("padsim: ensemble total photons exceed max_total_photons");
        det = new padsim_detector{cfg, std::move(ens), {}};
    });
    if (st == PADSIM_OK) *out = det;
    return st;
}

void padsim_detector_destroy(padsim_detector* detector) { delete detector; }

const char* padsim_last_error(const padsim_detector* detector) {
    return detector ? detector->last_error.c_str() : "";
}

padsim_status padsim_quadrature_density(int n, double x, double* out) {
    if (!out) return PADSIM_ERR_INVALID_ARGUMENT;
    return guarded(nullptr, [&] { *out = std::norm(padsim::fock::quadrature_overlap(n, x, 0.0)); });
}

padsim_status padsim_hermite_at_zero(int n, double* out) {
    if (!out) return PADSIM_ERR_INVALID_ARGUMENT;
    return guarded(nullptr, [&] { *out = padsim::fock::hermite_at_zero(n); });
}

padsim_status padsim_g_function(int n, int p, double x, double y, double out[2]) {
    if (!out) return PADSIM_ERR_INVALID_ARGUMENT;
    return guarded(nullptr, [&] {
        auto g = padsim::conditioning::g_function(n, p, x, y);
        out[0] = g.real();
        out[1] = g.imag();
    });
}

padsim_status padsim_ideal_fidelity(int p, int n_max, double eta, double* out) {
    if (!out) return PADSIM_ERR_INVALID_ARGUMENT;
    return guarded(nullptr, [&] { *out = padsim::loss::ideal_fidelity(p, n_max, eta); });
}

padsim_status padsim_label_count(const padsim_detector* detector, int* out) {
    if (!detector || !out) return PADSIM_ERR_INVALID_ARGUMENT;
    *out = static_cast<int>(detector->ens.labels.size());
    return PADSIM_OK;
}

padsim_status padsim_labels(const padsim_detector* detector, int* buffer, int buffer_len) {
    if (!detector || !buffer) return PADSIM_ERR_INVALID_ARGUMENT;
    if (buffer_len < static_cast<int>(detector->ens.labels.size()))
        return PADSIM_ERR_BUFFER_TOO_SMALL;
    for (size_t i = 0; i < detector->ens.labels.size(); ++i)
        buffer[i] = detector->ens.labels[i];
    return PADSIM_OK;
}

padsim_status padsim_joint_density(padsim_detector* detector, int n, double x, double y,
                                   double* out) {
    if (!detector || !out) return PADSIM_ERR_INVALID_ARGUMENT;
    return guarded(&detector->last_error, [&] {
        *out = detector->cfg.eta == 1.0
                   ? padsim::conditioning::joint_density(n, detector->cfg, x, y)
                   : padsim::loss::lossy_joint_density(n, detector->cfg, x, y);
    });
}

padsim_status padsim_symmetry_probe(padsim_detector* detector, double* out) {
    if (!detector || !out) return PADSIM_ERR_INVALID_ARGUMENT;
    return guarded(&detector->last_error, [&] {
        *out = padsim::conditioning::symmetry_probe(detector->ens, detector->cfg);
    });
}

padsim_status padsim_conditional_amplitude(padsim_detector* detector, int n, double x, double y,
                                           double out[2]) {
    if (!detector || !out) return PADSIM_ERR_INVALID_ARGUMENT;
    return guarded(&detector->last_error, [&] {
        auto a = padsim::conditioning::conditional_amplitude(n, detector->cfg, x, y);
        out[0] = a.real();
        out[1] = a.imag();
    });
}

padsim_status padsim_conditional_result(padsim_detector* detector, padsim_result* result,
                                        double* weights, int weights_len) {
    if (!detector || !result) return PADSIM_ERR_INVALID_ARGUMENT;
    if (weights && weights_len < static_cast<int>(detector->ens.labels.size()))
        return PADSIM_ERR_BUFFER_TOO_SMALL;
    return guarded(&detector->last_error, [&] {
        auto res = padsim::conditioning::post_select(detector->ens, detector->cfg);
        result->p_delta = res.p_delta;
        result->fidelity = res.fidelity;
        result->rate = res.rate;
        result->p_ideal = res.p_ideal;
        result->symmetric_fast_path = res.symmetric_fast_path ? 1 : 0;
        if (weights) {
            int i = 0;
            for (int n : detector->ens.labels) weights[i++] = res.weights.at(n);
        }
    });
}

padsim_status padsim_window_convergence(padsim_detector* detector, int w_max, double* diffs,
                                        int diffs_len) {
    if (!detector || !diffs) return PADSIM_ERR_INVALID_ARGUMENT;
    if (diffs_len < w_max) return PADSIM_ERR_BUFFER_TOO_SMALL;
    return guarded(&detector->last_error, [&] {
        auto out = padsim::conditioning::window_convergence(detector->ens.p, detector->cfg, w_max);
        for (size_t i = 0; i < out.size(); ++i) diffs[i] = out[i];
    });
}

padsim_status padsim_rate_constrained_fidelity(padsim_detector* detector, double target_rate,
                                               double* delta_out, double* fidelity_out) {
    if (!detector || !delta_out || !fidelity_out) return PADSIM_ERR_INVALID_ARGUMENT;
    return guarded(&detector->last_error, [&] {
        auto [d, f] = padsim::conditioning::rate_constrained_fidelity(detector->ens, detector->cfg,
                                                                      target_rate);
        *delta_out = d;
        *fidelity_out = f;
    });
}

padsim_status padsim_equivalent_efficiency(padsim_detector* detector, double* out) {
    if (!detector || !out) return PADSIM_ERR_INVALID_ARGUMENT;
    return guarded(&detector->last_error, [&] {
        *out = padsim::loss::equivalent_efficiency(detector->ens, detector->cfg);
    });
}

}  // extern "C"
