#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include "padsim/conditioning.hpp"
#include "padsim/loss.hpp"
#include "padsim/padsim.h"

namespace {

// RAII so failing CHECKs cannot leak handles
struct handle {
    padsim_detector* d = nullptr;
    ~handle() { padsim_detector_destroy(d); }
};

padsim_params default_params() {
    padsim_params p;
    padsim_params_init(&p);
    return p;
}

}  // namespace

TEST_CASE("version and status names are stable strings") {
    CHECK(std::string(padsim_version()) == "1.0.0");
    CHECK(std::string(padsim_status_name(PADSIM_OK)) == "PADSIM_OK");
    CHECK(std::string(padsim_status_name(PADSIM_ERR_INVALID_ARGUMENT)) ==
          "PADSIM_ERR_INVALID_ARGUMENT");
    CHECK(std::string(padsim_status_name(PADSIM_ERR_DEGENERATE)) == "PADSIM_ERR_DEGENERATE");
    CHECK(std::string(padsim_status_name(PADSIM_ERR_UNREACHABLE_RATE)) ==
          "PADSIM_ERR_UNREACHABLE_RATE");
    CHECK(std::string(padsim_status_name(PADSIM_ERR_FIDELITY_RANGE)) ==
          "PADSIM_ERR_FIDELITY_RANGE");
    CHECK(std::string(padsim_status_name(PADSIM_ERR_BUFFER_TOO_SMALL)) ==
          "PADSIM_ERR_BUFFER_TOO_SMALL");
    CHECK(std::string(padsim_status_name(PADSIM_ERR_INTERNAL)) == "PADSIM_ERR_INTERNAL");
}

TEST_CASE("params_init fills the documented defaults") {
    auto p = default_params();
    CHECK(p.p == 1);
    CHECK(p.w == 2);
    CHECK(p.omega == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
    CHECK(p.lambda == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    CHECK(p.theta == 0.0);
    CHECK(p.phi == 0.0);
    CHECK(p.delta == 0.1);
    CHECK(p.eta == 1.0);
    CHECK(p.max_total_photons == 24);
}

TEST_CASE("detector_create validates its inputs") {
    handle h;
    auto p = default_params();
    CHECK(padsim_detector_create(&p, &h.d) == PADSIM_OK);
    REQUIRE(h.d != nullptr);

    padsim_detector* bad = nullptr;
    auto q = default_params();
    q.p = -1;
    CHECK(padsim_detector_create(&q, &bad) == PADSIM_ERR_INVALID_ARGUMENT);
    CHECK(bad == nullptr);

    q = default_params();
    q.eta = 0.0;
    CHECK(padsim_detector_create(&q, &bad) == PADSIM_ERR_INVALID_ARGUMENT);

    q = default_params();
    q.delta = -0.2;
    CHECK(padsim_detector_create(&q, &bad) == PADSIM_ERR_INVALID_ARGUMENT);

    q = default_params();
    q.p = 20;
    q.w = 4;
    q.max_total_photons = 30;  // ensemble needs up to 20+4+20 > 30
    CHECK(padsim_detector_create(&q, &bad) == PADSIM_ERR_INVALID_ARGUMENT);

    CHECK(padsim_detector_create(nullptr, &bad) == PADSIM_ERR_INVALID_ARGUMENT);
    CHECK(padsim_detector_create(&p, nullptr) == PADSIM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("destroy and last_error tolerate null") {
    padsim_detector_destroy(nullptr);
    CHECK(std::string(padsim_last_error(nullptr)).empty());
}

TEST_CASE("stateless helpers match the library internals") {
    double v = 0.0;
    CHECK(padsim_hermite_at_zero(12, &v) == PADSIM_OK);
    CHECK(v == 665280.0);
    CHECK(padsim_hermite_at_zero(-1, &v) == PADSIM_ERR_INVALID_ARGUMENT);
    CHECK(padsim_hermite_at_zero(12, nullptr) == PADSIM_ERR_INVALID_ARGUMENT);

    CHECK(padsim_quadrature_density(2, 1.0, &v) == PADSIM_OK);
    CHECK(v == doctest::Approx(0.10377687435514872).epsilon(1e-13));

    double g[2] = {0, 0};
    CHECK(padsim_g_function(1, 1, 0.0, 0.0, g) == PADSIM_OK);
    CHECK(g[0] == -4.0);
    CHECK(g[1] == 0.0);
    CHECK(padsim_g_function(3, 1, 0.0, 0.0, g) == PADSIM_OK);
    CHECK(g[0] == 0.0);

    CHECK(padsim_ideal_fidelity(1, 4, 0.9, &v) == PADSIM_OK);
    CHECK(v == doctest::Approx(0.81037277147487844408).epsilon(1e-14));
    CHECK(padsim_ideal_fidelity(4, 1, 0.9, &v) == PADSIM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("labels expose the ensemble window") {
    handle h;
    auto p = default_params();
    REQUIRE(padsim_detector_create(&p, &h.d) == PADSIM_OK);

    int count = 0;
    CHECK(padsim_label_count(h.d, &count) == PADSIM_OK);
    REQUIRE(count == 4);

    int labels[4] = {-1, -1, -1, -1};
    CHECK(padsim_labels(h.d, labels, 4) == PADSIM_OK);
    CHECK(labels[0] == 0);
    CHECK(labels[3] == 3);

    CHECK(padsim_labels(h.d, labels, 2) == PADSIM_ERR_BUFFER_TOO_SMALL);
}

TEST_CASE("joint_density and conditional_amplitude mirror the C++ API") {
    handle h;
    auto p = default_params();
    REQUIRE(padsim_detector_create(&p, &h.d) == PADSIM_OK);

    padsim::conditioning::pad_config cfg;  // same values as default_params
    for (double x : {0.0, 0.7})
        for (double y : {-0.4, 1.2}) {
            double d = 0.0;
            CHECK(padsim_joint_density(h.d, 2, x, y, &d) == PADSIM_OK);
            CHECK(d == doctest::Approx(padsim::conditioning::joint_density(2, cfg, x, y))
                           .epsilon(1e-14));

            double amp[2] = {0, 0};
            CHECK(padsim_conditional_amplitude(h.d, 2, x, y, amp) == PADSIM_OK);
            auto ref = padsim::conditioning::conditional_amplitude(2, cfg, x, y);
            CHECK(std::abs(std::complex<double>(amp[0], amp[1]) - ref) < 1e-14);
        }
}

TEST_CASE("joint_density dispatches on the detector efficiency") {
    handle h;
    auto p = default_params();
    p.eta = 0.5;
    REQUIRE(padsim_detector_create(&p, &h.d) == PADSIM_OK);
    double d = 0.0;
    CHECK(padsim_joint_density(h.d, 1, 0.0, 0.0, &d) == PADSIM_OK);
    CHECK(d == doctest::Approx(0.15915494309189543).epsilon(1e-13));
}

TEST_CASE("symmetry_probe reports the regime") {
    handle sym;
    auto p = default_params();
    REQUIRE(padsim_detector_create(&p, &sym.d) == PADSIM_OK);
    double v = 1.0;
    CHECK(padsim_symmetry_probe(sym.d, &v) == PADSIM_OK);
    CHECK(v < 1e-8);

    handle skew;
    p.theta = 0.3;
    REQUIRE(padsim_detector_create(&p, &skew.d) == PADSIM_OK);
    CHECK(padsim_symmetry_probe(skew.d, &v) == PADSIM_OK);
    CHECK(v > 1e-3);
}

TEST_CASE("conditional_result reproduces the frozen post-selection numbers") {
    handle h;
    auto p = default_params();
    REQUIRE(padsim_detector_create(&p, &h.d) == PADSIM_OK);

    padsim_result res{};
    double weights[4] = {0, 0, 0, 0};
    CHECK(padsim_conditional_result(h.d, &res, weights, 4) == PADSIM_OK);
    CHECK(res.p_delta == doctest::Approx(0.0024999995872722865).epsilon(1e-12));
    CHECK(res.fidelity == doctest::Approx(0.9851162893796204).epsilon(1e-12));
    CHECK(res.p_ideal == 0.25);
    CHECK(res.rate == doctest::Approx(res.p_delta / 0.25).epsilon(1e-13));
    CHECK(res.symmetric_fast_path == 1);

    double wsum = weights[0] + weights[1] + weights[2] + weights[3];
    CHECK(wsum == doctest::Approx(res.p_delta).epsilon(1e-12));

    CHECK(padsim_conditional_result(h.d, &res, weights, 2) == PADSIM_ERR_BUFFER_TOO_SMALL);
    CHECK(padsim_conditional_result(h.d, &res, nullptr, 0) == PADSIM_OK);
}

TEST_CASE("window_convergence matches the C++ route") {
    handle h;
    auto p = default_params();
    REQUIRE(padsim_detector_create(&p, &h.d) == PADSIM_OK);

    double diffs[5] = {0};
    CHECK(padsim_window_convergence(h.d, 5, diffs, 5) == PADSIM_OK);
    padsim::conditioning::pad_config cfg;
    auto ref = padsim::conditioning::window_convergence(1, cfg, 5);
    for (int w = 0; w < 5; ++w) CHECK(diffs[w] == doctest::Approx(ref[w]).epsilon(1e-12));

    CHECK(padsim_window_convergence(h.d, 5, diffs, 3) == PADSIM_ERR_BUFFER_TOO_SMALL);
    CHECK(padsim_window_convergence(h.d, 0, diffs, 5) == PADSIM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("rate_constrained_fidelity and equivalent_efficiency round-trip") {
    handle h;
    auto p = default_params();
    REQUIRE(padsim_detector_create(&p, &h.d) == PADSIM_OK);

    double delta = 0.0, fidelity = 0.0;
    CHECK(padsim_rate_constrained_fidelity(h.d, 0.1, &delta, &fidelity) == PADSIM_OK);
    CHECK(delta == doctest::Approx(0.3162517468).epsilon(1e-7));
    CHECK(fidelity == doctest::Approx(0.8612532413).epsilon(1e-8));

    CHECK(padsim_rate_constrained_fidelity(h.d, 10.0, &delta, &fidelity) ==
          PADSIM_ERR_UNREACHABLE_RATE);
    CHECK(std::string(padsim_last_error(h.d)).find("rate") != std::string::npos);

    handle e;
    auto q = default_params();
    q.w = 3;
    q.delta = 0.01;
    q.eta = 0.98;
    REQUIRE(padsim_detector_create(&q, &e.d) == PADSIM_OK);
    double eta_ideal = 0.0;
    CHECK(padsim_equivalent_efficiency(e.d, &eta_ideal) == PADSIM_OK);
    CHECK(eta_ideal == doctest::Approx(0.970279279976).epsilon(1e-6));
}

TEST_CASE("out-of-range fidelity maps onto the dedicated status code") {
    handle h;
    auto p = default_params();
    p.w = 1;
    p.delta = 1.2;  // dip region: fidelity below the counter's eta -> 0 floor
    REQUIRE(padsim_detector_create(&p, &h.d) == PADSIM_OK);
    double eta_ideal = 0.0;
    CHECK(padsim_equivalent_efficiency(h.d, &eta_ideal) == PADSIM_ERR_FIDELITY_RANGE);
    CHECK(!std::string(padsim_last_error(h.d)).empty());
}

TEST_CASE("degenerate acceptance maps onto the dedicated status code") {
    handle h;
    auto p = default_params();
    p.p = 6;
    p.w = 0;
    p.delta = 1e-155;
    REQUIRE(padsim_detector_create(&p, &h.d) == PADSIM_OK);

    padsim_result res{};
    CHECK(padsim_conditional_result(h.d, &res, nullptr, 0) == PADSIM_ERR_DEGENERATE);
    CHECK(std::string(padsim_last_error(h.d)).find("acceptance") != std::string::npos);
}
