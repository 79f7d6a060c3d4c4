// SPDX-License-Identifier: Apache-2.0
#include "bilage/special.hpp"

#include <cmath>
#include <limits>

#include "bilage/errors.hpp"

namespace bilage::special {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2Pi = 1.83787706640934548356; // log(2 pi)

// Stirling coefficients B_{2k} / (2k (2k-1)), k = 1..8.
constexpr double kStirling[8] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
};

bool is_nonpositive_integer(cplx z) {
    if (z.imag() != 0.0) return false;
    double r = z.real();
    return r <= 0.0 && r == std::floor(r);
}

// log Gamma for Re z > 0 via recurrence shift into the Stirling zone.
cplx log_gamma_right(cplx z) {
    cplx shift = 0.0;
    while (z.real() < 12.0) {
        shift += std::log(z);
        z += 1.0;
    }
    cplx inv = 1.0 / z;
    cplx inv2 = inv * inv;
    cplx series = 0.0;
    cplx p = inv;
    for (double c : kStirling) {
        series += c * p;
        p *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * kLog2Pi + series - shift;
}

} // namespace

cplx log_sin_pi(cplx z) {
    // sin(pi z) = -exp(-i pi z) (1 - exp(2 i pi z)) / (2 i)   for Im z > 0.
    double im = z.imag();
    if (im < 0.0) return std::conj(log_sin_pi(std::conj(z)));
    if (im == 0.0) {
        double s = std::sin(kPi * z.real());
        if (s == 0.0) throw PoleError("log_sin_pi at an integer");
        // limit from above: negative s acquires +i pi
        return s > 0.0 ? cplx(std::log(s), 0.0) : cplx(std::log(-s), kPi);
    }
    return cplx(0.0, -kPi) * z +
           std::log(1.0 - std::exp(cplx(-2.0 * kPi * im, 2.0 * kPi * z.real()))) +
           cplx(-std::log(2.0), kPi / 2.0);
}

cplx log_gamma(cplx z) {
    if (is_nonpositive_integer(z))
        throw PoleError("log_gamma pole at nonpositive integer " + std::to_string(z.real()));
    if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z)));
    if (z.real() >= 0.5) return log_gamma_right(z);
    // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1-z).
    // For real z < 0 this evaluates the limit from the upper half plane.
    return std::log(kPi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

cplx gamma_ratio_shifted(cplx t, cplx s, int n) {
    cplx tn = t - double(n) + 1.0;
    cplx sn = s - double(n) + 1.0;
    bool t_pole = is_nonpositive_integer(tn);
    bool s_pole = is_nonpositive_integer(sn);
    if (t_pole && s_pole) {
        // Finite limit through the pole lattice:
        // Gamma(t-n+1)/Gamma(s-n+1) -> (-1)^{t-s} Gamma(n-s)/Gamma(n-t).
        double sign = std::fmod(std::abs(t.real() - s.real()), 2.0) < 0.5 ? 1.0 : -1.0;
        return sign * std::exp(std::lgamma(n - s.real()) - std::lgamma(n - t.real()));
    }
    if (t_pole) throw PoleError("gamma_ratio_shifted: numerator pole");
    if (s_pole) return 0.0;
    if (tn.real() > 0.1 && sn.real() > 0.1)
        return std::exp(log_gamma(tn) - log_gamma(sn));
    // Reflected form, stable for large n and moderate s, t.
    return std::exp(log_gamma(double(n) - s) - log_gamma(double(n) - t) +
                    log_sin_pi(s) - log_sin_pi(t));
}

double wright_bessel(double a, double b, double x) {
    if (!(b > 0.0)) throw DomainError("wright_bessel requires b > 0");
    if (!(a > 0.0)) throw DomainError("wright_bessel requires a > 0");
    if (!(x >= 0.0)) throw DomainError("wright_bessel requires x >= 0");
    if (x > 50.0)
        throw CancellationOverflowError("wright_bessel outside trusted range x <= 50");

    double sum = 0.0, comp = 0.0; // Kahan
    double max_term = 0.0;
    double log_term_base = 0.0;   // log(x^j / j!)
    int consecutive_small = 0;
    for (int j = 0; j < 400; ++j) {
        double term = (j % 2 == 0 ? 1.0 : -1.0) *
                      std::exp(log_term_base - std::lgamma(a + b * j));
        double yk = term - comp;
        double tk = sum + yk;
        comp = (tk - sum) - yk;
        sum = tk;
        max_term = std::max(max_term, std::abs(term));
        if (std::abs(term) < 1e-17 * std::abs(sum)) {
            if (++consecutive_small >= 3) break;
        } else {
            consecutive_small = 0;
        }
        if (x == 0.0) break;
        log_term_base += std::log(x) - std::log1p(double(j));
    }
    if (std::abs(sum) > 0.0 && max_term > 1e12 * std::abs(sum))
        throw CancellationOverflowError("wright_bessel lost more than 12 digits");
    return sum;
}

namespace {

double bessel_j_series(double nu, double x) {
    // (x/2)^nu sum_k (-x^2/4)^k / (k! Gamma(nu+k+1))
    long double q = -0.25L * (long double)x * x;
    long double nl = nu;
    long double term = std::exp(nl * std::log(0.5L * (long double)x) - std::lgamma(nl + 1.0L));
    long double sum = 0.0L;
    for (int k = 0; k < 200; ++k) {
        sum += term;
        term *= q / ((k + 1.0L) * (nl + k + 1.0L));
        if (std::abs((double)term) < 1e-18 * (std::abs((double)sum) + 1e-300)) break;
    }
    return (double)sum;
}

double bessel_j_asymptotic(double nu, double x) {
    // Hankel expansion, DLMF 10.17.3.
    double mu = 4.0 * nu * nu;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    for (int k = 1; k <= 14; ++k) {
        term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * x * k);
        if (k % 2 == 1) {
            q += ((k - 1) / 2 % 2 == 0 ? term : -term);
        } else {
            p += (k / 2 % 2 == 0 ? term : -term);
        }
        if (std::abs(term) < 1e-17) break;
    }
    double omega = x - 0.5 * nu * kPi - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (std::cos(omega) * p - std::sin(omega) * q);
}

} // namespace

double bessel_j(double nu, double x) {
    if (!(nu > -1.0)) throw DomainError("bessel_j requires nu > -1");
    if (!(x >= 0.0) || x > 100.0)
        throw OutOfTrustedRangeError("bessel_j trusted for x in [0, 100]");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    return x <= 17.0 ? bessel_j_series(nu, x) : bessel_j_asymptotic(nu, x);
}

double bessel_j_prime(double nu, double x) {
    if (x == 0.0) {
        if (nu == 1.0) return 0.5;
        if (nu > 1.0) return 0.0;
        throw OutOfTrustedRangeError("bessel_j_prime at x = 0 for nu < 1");
    }
    return (nu / x) * bessel_j(nu, x) - bessel_j(nu + 1.0, x);
}

namespace {

// Airy Maclaurin pair: F solves y'' = x y with F(0)=1, F'(0)=0;
// G with G(0)=0, G'(0)=1.  Long-double accumulation keeps the
// alternating tails near |x| = 8 below the 1e-11 budget.
void airy_series(double x, long double* F, long double* dF, long double* G, long double* dG) {
    if (x == 0.0) {
        *F = 1.0L; *dF = 0.0L; *G = 0.0L; *dG = 1.0L;
        return;
    }
    long double x3 = (long double)x * x * x;
    long double fa = 1.0L, ga = (long double)x;
    long double f = fa, df = 0.0L, g = ga, dg = 1.0L;
    for (int k = 0; k < 120; ++k) {
        fa *= x3 / ((3.0L * k + 2.0L) * (3.0L * k + 3.0L));
        ga *= x3 / ((3.0L * k + 3.0L) * (3.0L * k + 4.0L));
        f += fa;
        g += ga;
        df += fa * (3.0L * k + 3.0L) / x;
        dg += ga * (3.0L * k + 4.0L) / x;
        if (std::abs((double)fa) < 1e-20 * std::abs((double)f) &&
            std::abs((double)ga) < 1e-20 * (std::abs((double)g) + 1e-300))
            break;
    }
    *F = f;
    *dF = df;
    *G = g;
    *dG = dg;
}

} // namespace

std::pair<double, double> airy(double x) {
    if (std::abs(x) > 15.0)
        throw OutOfTrustedRangeError("airy trusted for |x| <= 15");
    // The growing-solution cancellation c1 F - c2 G caps the series at
    // +6 on the positive side; the oscillatory side is safe out to -8.
    if (x > -8.0 && x < 6.0) {
        // c1 = Ai(0), c2 = -Ai'(0), exact in terms of Gamma.
        static const long double c1 =
            std::exp(-std::lgamma(2.0L / 3.0L)) / std::pow(3.0L, 2.0L / 3.0L);
        static const long double c2 =
            std::exp(-std::lgamma(1.0L / 3.0L)) / std::pow(3.0L, 1.0L / 3.0L);
        long double F, dF, G, dG;
        airy_series(x, &F, &dF, &G, &dG);
        return {double(c1 * F - c2 * G), double(c1 * dF - c2 * dG)};
    }
    if (x >= 6.0) {
        // DLMF 9.7.5 / 9.7.6, truncated at the smallest term.
        double zeta = (2.0 / 3.0) * std::pow(x, 1.5);
        double u = 1.0, su = 0.0, sv = 0.0, pw = 1.0, prev = 1e300;
        for (int k = 0; k <= 40; ++k) {
            double tu = u * pw;
            if (std::abs(tu) > prev) break;
            prev = std::abs(tu);
            double v = u * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
            double sgn = k % 2 == 0 ? 1.0 : -1.0;
            su += sgn * tu;
            sv += sgn * v * pw;
            u *= (6.0 * k + 5.0) * (6.0 * k + 1.0) / (72.0 * (k + 1.0));
            pw /= zeta;
        }
        double pref = std::exp(-zeta) / (2.0 * std::sqrt(kPi));
        return {pref * su / std::pow(x, 0.25), -pref * sv * std::pow(x, 0.25)};
    }
    // x <= -8: oscillatory side, DLMF 9.7.9 / 9.7.10.
    double t = -x;
    double zeta = (2.0 / 3.0) * std::pow(t, 1.5);
    double u = 1.0, pw = 1.0, prev = 1e300;
    double se = 0.0, so = 0.0, ve = 0.0, vo = 0.0;
    for (int k = 0; k <= 40; ++k) {
        double tu = u * pw;
        if (std::abs(tu) > prev) break;
        prev = std::abs(tu);
        double v = u * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
        double sgn = (k / 2) % 2 == 0 ? 1.0 : -1.0; // (-1)^floor(k/2)
        if (k % 2 == 0) {
            se += sgn * tu;
            ve += sgn * v * pw;
        } else {
            so += sgn * tu;
            vo += sgn * v * pw;
        }
        u *= (6.0 * k + 5.0) * (6.0 * k + 1.0) / (72.0 * (k + 1.0));
        pw /= zeta;
    }
    double c = std::cos(zeta - 0.25 * kPi), s = std::sin(zeta - 0.25 * kPi);
    double ai = (c * se + s * so) / (std::sqrt(kPi) * std::pow(t, 0.25));
    double dai = (s * ve - c * vo) * std::pow(t, 0.25) / std::sqrt(kPi);
    return {ai, dai};
}

double sine_kernel(double x, double y) {
    double d = x - y;
    if (std::abs(d) < 1e-6) {
        double u = kPi * d;
        return 1.0 - u * u / 6.0 * (1.0 - u * u / 20.0);
    }
    return std::sin(kPi * d) / (kPi * d);
}

double airy_kernel(double x, double y) {
    if (std::abs(x - y) < 1e-5) {
        double m = 0.5 * (x + y);
        auto [ai, dai] = airy(m);
        return dai * dai - m * ai * ai;
    }
    auto [ax, dax] = airy(x);
    auto [ay, day] = airy(y);
    return (ax * day - dax * ay) / (x - y);
}

double bessel_kernel(double alpha, double x, double y) {
    double sx = std::sqrt(x), sy = std::sqrt(y);
    if (std::abs(x - y) < 1e-8 * (std::abs(x) + 1.0)) {
        double u = sx;
        double j = bessel_j(alpha, u), dj = bessel_j_prime(alpha, u);
        return 0.25 * (dj * dj + (1.0 - alpha * alpha / (u * u)) * j * j);
    }
    double jx = bessel_j(alpha, sx), jy = bessel_j(alpha, sy);
    double djx = bessel_j_prime(alpha, sx), djy = bessel_j_prime(alpha, sy);
    return (jx * sy * djy - sx * djx * jy) / (2.0 * (x - y));
}

} // namespace bilage::special
