// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

namespace bilage::equilibrium {

/// One point of the macroscopic density in the phi parametrization.
struct PhiPoint {
    double phi;
    double x;
    double rho;
};

/// Right endpoint of the support in the Fuss-Catalan coordinates,
/// (1+theta)^{1+theta} / theta^theta.
double support_max(double theta);

/// x(phi) = sin((1+theta) phi)^{1+theta} / (sin phi sin(theta phi)^theta),
/// strictly decreasing on (0, pi/(1+theta)).
double x_of_phi(double theta, double phi);

/// Derivative dx/dphi, from the logarithmic derivative of x(phi).
double dx_dphi(double theta, double phi);

/// Density at x(phi).  Both published forms are evaluated and must agree
/// to 1e-12 relative; the second (pure product) form is returned.
double rho_of_phi(double theta, double phi);

PhiPoint at_phi(double theta, double phi);

/// Inverse of x_of_phi by bisection (monotonicity makes this exact).
double phi_of_x(double theta, double x);

/// k-th moment of the density, integrated in phi coordinates where the
/// hard-edge singularity disappears.
double density_moment(double theta, int k);

/// Fuss-Catalan number 1/(theta k + 1) * binom((1+theta) k, k); matches
/// the quadrature moments (see density_moment tests).
double fuss_catalan_number(double theta, int k);

/// Density f_theta of the particles before the theta x^{1/theta} change
/// of variables, from the complex root of J(z) = theta (z+1)((z+1)/z)^{1/theta}.
/// Support is (0, (1+theta)^{1+1/theta}); requires theta >= 1.
double ftheta_via_jroots(double theta, double x);

/// The root with positive imaginary part that ftheta_via_jroots uses.
std::complex<double> jroot_upper(double theta, double x);

/// Closed-form density for theta = 2 on (0, 3^{3/2}).
double density_theta2_closed(double x);

/// Closed-form density for products of two Ginibre factors, on (0, 27/4).
double density_M2_closed(double x);

} // namespace bilage::equilibrium
