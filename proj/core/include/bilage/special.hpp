// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <utility>

namespace bilage::special {

using cplx = std::complex<double>;

/// Principal branch of log Gamma(z), continuous off the cut (-infty, 0].
/// Real negative z is treated as the limit from the upper half plane.
/// Relative accuracy ~1e-13 for |z| <= 1e4 away from the poles.
cplx log_gamma(cplx z);

/// log of sin(pi z), branch chosen so that exp() of the result is exact;
/// stable for large |Im z| (never forms the overflowing sin directly).
cplx log_sin_pi(cplx z);

/// Gamma(t-n+1) / Gamma(s-n+1) evaluated through the pole lattice as
/// Gamma(n-s)/Gamma(n-t) * sin(pi s)/sin(pi t), which stays finite and
/// well conditioned for moderate s, t and large n (|Im| up to ~1e3).
cplx gamma_ratio_shifted(cplx t, cplx s, int n);

/// Wright's generalized Bessel function sum_j (-x)^j / (j! Gamma(a+b j)).
/// Compensated summation; throws CancellationOverflowError when the
/// alternating series loses more than 12 digits.
double wright_bessel(double a, double b, double x);

/// Bessel function of the first kind, nu > -1, x in [0, 100].
/// Ascending series for x <= 12, Hankel asymptotics beyond.
double bessel_j(double nu, double x);

/// Derivative J_nu'(x) via (nu/x) J_nu - J_{nu+1}; valid for nu > -1.
double bessel_j_prime(double nu, double x);

/// Airy Ai and Ai' on [-15, 15]: Maclaurin pair series for |x| < 8,
/// asymptotic expansions beyond.
std::pair<double, double> airy(double x);

/// Normalized sine kernel sin(pi(x-y)) / (pi(x-y)).
double sine_kernel(double x, double y);

/// Airy kernel (Ai(x)Ai'(y) - Ai'(x)Ai(y)) / (x-y) with the diagonal
/// limit Ai'(x)^2 - x Ai(x)^2.
double airy_kernel(double x, double y);

/// Hard-edge Bessel kernel of order alpha, the theta = 1 scaling limit:
///   (J_a(sx) sy J_a'(sy) - sx J_a'(sx) J_a(sy)) / (2(x-y)),  s* = sqrt(*).
double bessel_kernel(double alpha, double x, double y);

} // namespace bilage::special
