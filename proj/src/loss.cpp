#include "padsim/loss.hpp"

#include <cmath>
#include <stdexcept>

#include "padsim/errors.hpp"

namespace padsim::loss {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Amplitude factor for losing l photons out of n: sqrt(C(n,l) eta^(n-l) (1-eta)^l).
double loss_amplitude(int n, int l, double eta) {
    return std::sqrt(fock::binomial(n, l) * std::pow(eta, n - l) * std::pow(1.0 - eta, l));
}

}  // namespace

std::vector<loss_branch> apply_loss(const fock::two_mode_state& state, double eta) {
    require(eta > 0 && eta <= 1, "apply_loss: eta must lie in (0, 1]");
    if (eta == 1.0) {
        loss_branch keep;
        keep.weight = 1.0;
        keep.state = state;
        return {keep};
    }
    const int total = state.total;
    std::vector<loss_branch> branches;
    for (int lb = 0; lb <= total; ++lb) {
        for (int lc = 0; lc + lb <= total; ++lc) {
            loss_branch br;
            br.lost_b = lb;
            br.lost_c = lc;
            br.state.total = total - lb - lc;
            br.state.amplitudes.assign(br.state.total + 1, {0.0, 0.0});
            for (int j = lb; j <= total - lc; ++j) {
                const int k = total - j;
                br.state.amplitudes[j - lb] +=
                    state.amplitudes[j] * loss_amplitude(j, lb, eta) * loss_amplitude(k, lc, eta);
            }
            br.weight = br.state.norm_squared();
            if (br.weight < 1e-300) continue;
            const double scale = 1.0 / std::sqrt(br.weight);
            for (auto& a : br.state.amplitudes) a *= scale;
            branches.push_back(std::move(br));
        }
    }
    return branches;
}

double lossy_joint_density(int n, const conditioning::pad_config& cfg, double x, double y) {
    conditioning::validate(cfg);
    require(n >= 0, "lossy_joint_density: n must be >= 0");
    require(n + cfg.p <= cfg.max_total_photons,
            "lossy_joint_density: n + p exceeds the photon cap");
    const auto state = fock::beamsplitter_output(n, cfg.p, {cfg.omega, cfg.lambda});
    const auto branches = apply_loss(state, cfg.eta);
    const auto phix = fock::oscillator_values(state.total, x);
    const auto phiy = fock::oscillator_values(state.total, y);
    double dens = 0.0;
    for (const auto& br : branches) {
        std::complex<double> amp{0.0, 0.0};
        for (int j = 0; j <= br.state.total; ++j) {
            const int k = br.state.total - j;
            amp += br.state.amplitudes[j] * phix[j] * phiy[k] *
                   std::polar(1.0, -(j * cfg.theta + k * cfg.phi));
        }
        dens += br.weight * std::norm(amp);
    }
    return dens;
}

double ideal_counter_povm_weight(int m, int p, double eta) {
    require(m >= 0 && p >= 0, "ideal_counter_povm_weight: counts must be >= 0");
    require(eta > 0 && eta <= 1, "ideal_counter_povm_weight: eta must lie in (0, 1]");
    if (m < p) return 0.0;
    return fock::binomial(m, p) * std::pow(eta, p) * std::pow(1.0 - eta, m - p);
}

double ideal_fidelity(int p, int n_max, double eta) {
    require(p >= 0 && p <= n_max, "ideal_fidelity: need 0 <= p <= n_max");
    require(eta > 0 && eta <= 1, "ideal_fidelity: eta must lie in (0, 1]");
    double sum = 0.0;
    for (int n = p; n <= n_max; ++n) sum += fock::binomial(n, p) * std::pow(1.0 - eta, n - p);
    return 1.0 / sum;
}

double pad_fidelity_lossy(const conditioning::test_ensemble& ens,
                          const conditioning::pad_config& cfg) {
    require(cfg.delta > 0, "pad_fidelity_lossy: delta must be > 0");
    return conditioning::post_select(ens, cfg).fidelity;
}

double equivalent_efficiency(const conditioning::test_ensemble& ens,
                             const conditioning::pad_config& cfg) {
    const double target = conditioning::post_select(ens, cfg).fidelity;
    const int n_max = ens.p + ens.w;
    if (target >= 1.0) return 1.0;
    // eta -> 0 floor: 1 / sum_(n=p..n_max) C(n,p) = 1 / C(n_max+1, p+1)
    const double floor = 1.0 / fock::binomial(n_max + 1, ens.p + 1);
    if (target <= floor)
        throw fidelity_range_error(
            "equivalent_efficiency: fidelity below the ideal counter's eta -> 0 floor");
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        (ideal_fidelity(ens.p, n_max, mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace padsim::loss
