#pragma once

#include <stdexcept>
#include <string>

namespace padsim {

// Numerical-degeneracy conditions get their own exception types so callers
// (and the CLI exit-code mapping) can tell them apart from plain bad input.

// Acceptance probability underflowed; no meaningful post-selected state exists.
struct degenerate_error : std::runtime_error {
    explicit degenerate_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested probability rate exceeds what an infinite acceptance radius yields.
struct unreachable_rate_error : std::runtime_error {
    explicit unreachable_rate_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A fidelity fell outside the range an ideal inefficient counter can produce,
// so no equivalent efficiency exists.
struct fidelity_range_error : std::runtime_error {
    explicit fidelity_range_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace padsim
