// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace bilage {

// Base class for every failure this library reports.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An integrand returned NaN or Inf at a quadrature node.
class NonFiniteError : public Error {
public:
    using Error::Error;
};

// Vertical-line truncation: panel contributions stopped decreasing
// geometrically before the configured maximum height.
class SlowDecayError : public Error {
public:
    using Error::Error;
};

// Argument outside the domain an operation is defined on.
class DomainError : public Error {
public:
    using Error::Error;
};

// Evaluation point is outside the support of a density.
class OutOfSupportError : public Error {
public:
    using Error::Error;
};

// Argument outside the range where the implementation holds its
// documented accuracy.
class OutOfTrustedRangeError : public Error {
public:
    using Error::Error;
};

// Evaluation at (or numerically indistinguishable from) a pole.
class PoleError : public Error {
public:
    using Error::Error;
};

// Alternating-series evaluation lost too many digits; the result would
// be silently wrong rather than merely imprecise.
class CancellationOverflowError : public Error {
public:
    using Error::Error;
};

// A value exceeded the range of double; use the log-scale variant.
class OverflowError : public Error {
public:
    using Error::Error;
};

// Iterative root search failed to converge.
class NoConvergenceError : public Error {
public:
    using Error::Error;
};

// Evaluation on a branch cut without a defined one-sided convention.
class BranchCutError : public Error {
public:
    using Error::Error;
};

// The s and t contours of a double integral came too close.
class ContourPinchError : public Error {
public:
    using Error::Error;
};

} // namespace bilage
