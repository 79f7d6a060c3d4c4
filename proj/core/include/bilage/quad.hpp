// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "bilage/errors.hpp"

namespace bilage::quad {

using cplx = std::complex<double>;

/// Result of a quadrature: value, conservative absolute error estimate
/// from the embedded lower-order rule, and evaluation count.  `converged`
/// reports whether the requested tolerance was met; `require()` turns a
/// miss into a ToleranceNotMet failure that still carries the best value.
struct QuadOutcome {
    cplx value{0.0, 0.0};
    double abs_err_est = 0.0;
    std::size_t n_evals = 0;
    bool converged = true;

    const QuadOutcome& require() const;
};

class ToleranceNotMet : public Error {
public:
    explicit ToleranceNotMet(const QuadOutcome& best)
        : Error("quadrature tolerance not met (err_est=" + std::to_string(best.abs_err_est) + ")"),
          best_(best) {}
    const QuadOutcome& best() const { return best_; }

private:
    QuadOutcome best_;
};

inline const QuadOutcome& QuadOutcome::require() const {
    if (!converged) throw ToleranceNotMet(*this);
    return *this;
}

/// One smooth piece of a contour: u in [0,1] -> point, with its velocity.
struct Segment {
    std::function<cplx(double)> point;
    std::function<cplx(double)> velocity;
};

/// Piecewise-parametric complex path.  Orientation is the parameter
/// direction.  validate() enforces continuity of consecutive endpoints
/// (1e-12 of scale), closure when flagged closed, and nonvanishing
/// velocity at sample points.
class ContourPath {
public:
    ContourPath() = default;
    ContourPath(std::vector<Segment> segments, bool closed);

    static ContourPath line(cplx a, cplx b);
    static ContourPath polyline(const std::vector<cplx>& points, bool closed = false);
    /// Circular arc around `center`, phase running from `phase0` to `phase1`.
    static ContourPath arc(cplx center, double radius, double phase0, double phase1);
    static ContourPath circle(cplx center, double radius); // counterclockwise, closed

    void append(Segment seg);
    void append(const ContourPath& other);
    void mark_closed();

    ContourPath reversed() const;

    const std::vector<Segment>& segments() const { return segments_; }
    bool closed() const { return closed_; }
    cplx start() const;
    cplx end() const;

    void validate() const;

private:
    std::vector<Segment> segments_;
    bool closed_ = false;
};

struct QuadOptions {
    int max_panels = 20000;
    int initial_panels_per_segment = 1;
    /// Panels touching interval endpoints split at 1/4 toward the endpoint
    /// instead of bisecting (graded refinement for endpoint singularities
    /// u^beta, beta > -1), down to this depth.
    int graded_depth = 40;
};

/// Adaptive Gauss-Legendre (order 16, embedded order 8) along a path.
/// abs_err_est is the sum over panels of |GL16 - GL8|.
QuadOutcome integrate_contour(const std::function<cplx(cplx)>& f,
                              const ContourPath& path, double tol,
                              const QuadOptions& opts = {});

/// Truncated vertical Mellin-Barnes line Re s = c, integrating
/// f over c - iT .. c + iT with geometrically growing T.  A doubling
/// stops once its band contributes < tol/8 of the running total; the
/// truncation tail is bounded by last-band extrapolation.
struct VerticalLineSpec {
    double abscissa = 0.5;
    double initial_height = 16.0;
    int max_doublings = 24;
};

QuadOutcome integrate_vertical(const std::function<cplx(cplx)>& f,
                               const VerticalLineSpec& spec, double tol);

/// Real-interval adaptive quadrature with graded endpoint refinement.
QuadOutcome integrate_interval(const std::function<cplx(double)>& f,
                               double a, double b, double tol,
                               const QuadOptions& opts = {});

/// Winding number of a closed path around a point (quadrature-based,
/// rounded to the nearest integer).
int winding_number(const ContourPath& path, cplx point);

/// Panel table over a fixed path with cached integrand values.  Built
/// once per integrand, it answers two queries without re-evaluating f:
///   integral()  = int f(s) ds
///   cauchy(t)   = int f(s)/(s - t) ds      for t off the path.
/// Panels refine until the embedded-rule error of int |f| |ds| is below
/// rel_tol of the total; where a `clearance` map is given (distance from
/// a path point to the nearest possible t), panel arclength is further
/// capped by the local clearance so cauchy() stays accurate there.
class CauchyTable {
public:
    CauchyTable(std::function<cplx(cplx)> f, ContourPath path, double rel_tol,
                std::function<double(cplx)> clearance = nullptr,
                double min_scale_floor = 1e-3, int max_panels = 60000);

    cplx integral() const;
    cplx cauchy(cplx t) const;
    /// Rebuild at sharply higher resolution; the difference between the
    /// two tables' answers is the error estimate.
    CauchyTable refined() const;
    std::size_t size() const { return nodes_.size(); }

private:
    struct Node {
        cplx s;
        cplx wf; // weight * velocity * f(s)
    };
    CauchyTable() = default;
    void build(int extra_split);
    std::vector<Node> nodes_;
    std::function<cplx(cplx)> f_;
    ContourPath path_;
    double rel_tol_ = 1e-10;
    std::function<double(cplx)> clearance_;
    double floor_ = 1e-3;
    double cap_factor_ = 0.8;
    int max_panels_ = 60000;
};

/// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence (cached per order).
const std::vector<std::pair<double, double>>& gauss_legendre(int order);

} // namespace bilage::quad
