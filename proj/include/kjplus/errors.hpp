// kjplus: error types shared by all modules
#pragma once

#include <stdexcept>
#include <string>

namespace kjplus {

/// Input violates a documented precondition (bad k/l, eccentricity out of range, ...).
class invalid_spec : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Eccentricity falls inside a guard band around a disaster threshold.
class guard_band_error : public invalid_spec {
public:
    using invalid_spec::invalid_spec;
};

/// A numerical stage failed (non-convergence, near-tangency, inconsistent arrangement).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what, std::string stage = {})
        : std::runtime_error(stage.empty() ? what : stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

} // namespace kjplus
