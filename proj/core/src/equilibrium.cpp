// SPDX-License-Identifier: Apache-2.0
#include "bilage/equilibrium.hpp"

#include <cmath>
#include <complex>

#include "bilage/errors.hpp"
#include "bilage/quad.hpp"

namespace bilage::equilibrium {

namespace {

constexpr double kPi = 3.14159265358979323846;
using cplx = std::complex<double>;

void check_theta(double theta) {
    if (!(theta > 0.0)) throw DomainError("theta must be positive");
}

void check_phi(double theta, double phi) {
    if (!(phi > 0.0) || !(phi < kPi / (1.0 + theta)))
        throw DomainError("phi must lie strictly inside (0, pi/(1+theta))");
}

} // namespace

double support_max(double theta) {
    check_theta(theta);
    return std::pow(1.0 + theta, 1.0 + theta) / std::pow(theta, theta);
}

double x_of_phi(double theta, double phi) {
    check_theta(theta);
    check_phi(theta, phi);
    double s1 = std::sin((1.0 + theta) * phi);
    double s2 = std::sin(phi);
    double s3 = std::sin(theta * phi);
    return std::pow(s1, 1.0 + theta) / (s2 * std::pow(s3, theta));
}

double dx_dphi(double theta, double phi) {
    check_theta(theta);
    check_phi(theta, phi);
    double a = 1.0 + theta;
    double log_deriv = a * a / std::tan(a * phi) - 1.0 / std::tan(phi) -
                       theta * theta / std::tan(theta * phi);
    return x_of_phi(theta, phi) * log_deriv;
}

double rho_of_phi(double theta, double phi) {
    check_theta(theta);
    check_phi(theta, phi);
    double s1 = std::sin((1.0 + theta) * phi);
    double s2 = std::sin(phi);
    double s3 = std::sin(theta * phi);
    double form2 = (s2 * s2 * std::pow(s3, theta - 1.0)) / (kPi * std::pow(s1, theta));
    double form1 = s1 * s2 / (kPi * x_of_phi(theta, phi) * s3);
    if (std::abs(form1 - form2) > 1e-12 * std::max(form1, form2))
        throw DomainError("density forms disagree; phi too close to the boundary");
    return form2;
}

PhiPoint at_phi(double theta, double phi) {
    return {phi, x_of_phi(theta, phi), rho_of_phi(theta, phi)};
}

double phi_of_x(double theta, double x) {
    check_theta(theta);
    if (!(x > 0.0) || !(x < support_max(theta)))
        throw OutOfSupportError("x outside the open support (0, x_max)");
    double lo = 1e-14, hi = kPi / (1.0 + theta) * (1.0 - 1e-14);
    // x(phi) decreases from x_max to 0
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double xv = x_of_phi(theta, mid);
        if (xv > x)
            lo = mid;
        else
            hi = mid;
        if (std::abs(xv - x) <= 1e-13 * x && it > 40) return mid;
    }
    return 0.5 * (lo + hi);
}

double density_moment(double theta, int k) {
    check_theta(theta);
    if (k < 0 || k > 8) throw DomainError("density_moment supports k in 0..8");
    double top = kPi / (1.0 + theta);
    auto f = [theta, k](double phi) -> cplx {
        double x = x_of_phi(theta, phi);
        double rho = rho_of_phi(theta, phi);
        return std::pow(x, double(k)) * rho * std::abs(dx_dphi(theta, phi));
    };
    // phi endpoints are removable; stay a hair inside
    auto q = quad::integrate_interval(f, top * 1e-12, top * (1.0 - 1e-12), 1e-11);
    return q.value.real();
}

double fuss_catalan_number(double theta, int k) {
    // 1/(theta k + 1) binom((1+theta) k, k), via log-gamma for real theta
    if (k == 0) return 1.0;
    double a = (1.0 + theta) * k;
    double logbinom = std::lgamma(a + 1.0) - std::lgamma(double(k) + 1.0) -
                      std::lgamma(a - k + 1.0);
    return std::exp(logbinom) / (theta * k + 1.0);
}

namespace {

cplx jfun(double theta, cplx z) {
    return theta * (z + 1.0) * std::exp(std::log((z + 1.0) / z) / theta);
}

cplx jfun_prime(double theta, cplx z) {
    // d/dz of theta (z+1)^{1+1/theta} z^{-1/theta}
    return std::exp((std::log(z + 1.0) - std::log(z)) / theta) * (theta * z - 1.0) / z;
}

} // namespace

cplx jroot_upper(double theta, double x) {
    check_theta(theta);
    if (theta < 1.0) throw DomainError("jroot_upper requires theta >= 1");
    double xmax = std::pow(1.0 + theta, 1.0 + 1.0 / theta);
    if (!(x > 0.0) || !(x < xmax))
        throw OutOfSupportError("x outside (0, (1+theta)^{1+1/theta})");

    // The saddle parametrization solves the same algebraic equation:
    // with y = (x/theta)^theta and w = w_+(phi(y)) one has
    // w^{1+theta} = y (w-1), and z = w - 1 satisfies J(z) = x.
    double y = std::pow(x / theta, theta);
    double phi = phi_of_x(theta, y);
    double r = std::sin((1.0 + theta) * phi) / std::sin(theta * phi);
    cplx w(r * std::cos(phi), r * std::sin(phi));
    cplx z = w - 1.0;

    for (int attempt = 0; attempt < 8; ++attempt) {
        cplx zi = z + 0.05 * double(attempt) * cplx(0.3, 1.0) * std::abs(z);
        for (int it = 0; it < 60; ++it) {
            cplx f = jfun(theta, zi) - x;
            if (std::abs(f) < 1e-12 * (std::abs(x) + 1.0) && zi.imag() > 0.0) return zi;
            cplx step = f / jfun_prime(theta, zi);
            double damp = 1.0;
            while (damp > 1e-4 && (zi - damp * step).imag() <= 0.0) damp *= 0.5;
            zi -= damp * step;
        }
        if (std::abs(jfun(theta, zi) - x) < 1e-10 * (std::abs(x) + 1.0) && zi.imag() > 0.0)
            return zi;
    }
    throw NoConvergenceError("Newton failed to locate the upper J-root");
}

double ftheta_via_jroots(double theta, double x) {
    cplx root = jroot_upper(theta, x);
    // f = theta (I+ - I-) / (2 pi x i) with I- the conjugate of I+
    return theta * root.imag() / (kPi * x);
}

double density_theta2_closed(double x) {
    double top = std::pow(3.0, 1.5);
    if (!(x > 0.0) || !(x < top))
        throw OutOfSupportError("density_theta2_closed support is (0, 3^{3/2})");
    double r = std::sqrt(1.0 - x * x / 27.0);
    return std::sqrt(3.0) / (2.0 * kPi * std::cbrt(x)) *
           (std::cbrt(1.0 + r) - std::cbrt(1.0 - r));
}

double density_M2_closed(double x) {
    if (!(x > 0.0) || !(x < 6.75))
        throw OutOfSupportError("density_M2_closed support is (0, 27/4)");
    double r = std::sqrt(1.0 - 4.0 * x / 27.0);
    return std::sqrt(3.0) / (std::pow(2.0, 4.0 / 3.0) * kPi * std::pow(x, 2.0 / 3.0)) *
           (std::cbrt(1.0 + r) - std::cbrt(1.0 - r));
}

} // namespace bilage::equilibrium
