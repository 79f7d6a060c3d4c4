// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "bilage/errors.hpp"

namespace bilage {

/// Parameter triple (alpha, theta, n) of a biorthogonal Laguerre ensemble.
/// alpha > -1 and theta > 0 always; operations that additionally need
/// theta >= 1 say so at their call sites.
struct EnsembleParams {
    double alpha = 0.0;
    double theta = 1.0;
    int n = 1;

    void validate() const {
        if (!(alpha > -1.0))
            throw DomainError("alpha must exceed -1, got " + std::to_string(alpha));
        if (!(theta > 0.0))
            throw DomainError("theta must be positive, got " + std::to_string(theta));
        if (n < 1)
            throw DomainError("n must be at least 1, got " + std::to_string(n));
    }

    void require_theta_at_least_one(const char* op) const {
        if (theta < 1.0)
            throw DomainError(std::string(op) + " requires theta >= 1, got " + std::to_string(theta));
    }
};

} // namespace bilage
