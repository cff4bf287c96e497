#pragma once

#include <utility>
#include <vector>

#include "padsim/conditioning.hpp"
#include "padsim/fock.hpp"

// Detector-imperfection modeling: photon loss ahead of each homodyne
// detector, the inefficient-but-otherwise-ideal counter POVM baseline, and
// the efficiency a counter would need to match the scheme's fidelity.

namespace padsim::loss {

// One Kraus branch of independent loss on both modes: lose_b photons from
// mode b and lose_c from mode c, each photon surviving with probability eta.
struct loss_branch {
    double weight = 0.0;          // probability of this branch
    fock::two_mode_state state;   // normalized post-loss state
    int lost_b = 0;
    int lost_c = 0;
};

// Expands transmissivity-eta loss on both modes of a pure state into a
// finite list of normalized branch states; weights sum to 1.
std::vector<loss_branch> apply_loss(const fock::two_mode_state& state, double eta);

// Outcome density at (x, y) for signal component n with inefficient
// detectors: sum over loss branches of weight * |<x, y | branch>|^2.
// Equals the lossless joint_density when cfg.eta = 1.
double lossy_joint_density(int n, const conditioning::pad_config& cfg, double x, double y);

// POVM weight of an eta-efficient ideal counter reporting p clicks on |m>:
// C(m, p) eta^p (1-eta)^(m-p) for m >= p, else 0.
double ideal_counter_povm_weight(int m, int p, double eta);

// Fidelity of an eta-efficient ideal counter heralding p clicks on the
// benchmark ensemble truncated at n_max:
//   1 / sum_(n=p..n_max) C(n, p) (1-eta)^(n-p).
double ideal_fidelity(int p, int n_max, double eta);

// Post-selected fidelity with inefficient homodyne detectors; the full
// conditional_result is available through conditioning::post_select, which
// dispatches to the lossy density automatically.
double pad_fidelity_lossy(const conditioning::test_ensemble& ens,
                          const conditioning::pad_config& cfg);

// The eta_ideal at which an ideal counter's fidelity on the same ensemble
// equals this detector's fidelity (bisection on the strictly increasing
// closed form, bracket width < 1e-10).  Throws fidelity_range_error when the
// detector's fidelity is below the counter's eta -> 0 floor.
double equivalent_efficiency(const conditioning::test_ensemble& ens,
                             const conditioning::pad_config& cfg);

}  // namespace padsim::loss
