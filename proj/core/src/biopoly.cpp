// SPDX-License-Identifier: Apache-2.0
#include "bilage/biopoly.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "bilage/errors.hpp"
#include "bilage/quad.hpp"
#include "bilage/special.hpp"

namespace bilage::biopoly {

namespace {

constexpr double kPi = 3.14159265358979323846;
using cplx = std::complex<double>;

double weight_tail_cutoff(double alpha, double ktheta) {
    // beyond this point the e^{-x} tail is below 1e-12 of any polynomial
    // factor of degree <= k theta + alpha
    return alpha + ktheta + 40.0 + 10.0 * std::log(10.0);
}

} // namespace

double log_bimoment(int j, int k, const EnsembleParams& params) {
    params.validate();
    if (j < 0 || k < 0) throw DomainError("bimoment indices must be nonnegative");
    return std::lgamma(params.alpha + 1.0 + j + k * params.theta);
}

double bimoment(int j, int k, const EnsembleParams& params) {
    double lg = log_bimoment(j, k, params);
    if (lg > 709.0) throw OverflowError("bimoment exceeds double range; use log_bimoment");
    return std::exp(lg);
}

double bimoment_det_log(int n, const EnsembleParams& params) {
    params.validate();
    if (n < 0) throw DomainError("bimoment_det_log needs n >= 0");
    double sum = 0.0;
    for (int k = 0; k <= n; ++k)
        sum += std::lgamma(k + 1.0) + k * std::log(params.theta) +
               std::lgamma(params.alpha + 1.0 + k * params.theta);
    return sum;
}

double q_poly(int k, double x, const EnsembleParams& params) {
    params.validate();
    if (k < 0 || k > 60) throw DomainError("q_poly supports 0 <= k <= 60");
    if (!(x >= 0.0)) throw DomainError("q_poly requires x >= 0");
    const double alpha = params.alpha, theta = params.theta;
    if (k == 0) return 1.0;

    // log-space terms of (-1)^k sum_j C(k,j) (-x)^j G(a+1+k t)/G(a+1+j t)
    std::vector<double> logs(k + 1);
    std::vector<double> signs(k + 1);
    double lgk = std::lgamma(alpha + 1.0 + k * theta);
    double lmax = -1e300;
    for (int j = 0; j <= k; ++j) {
        double lg = std::lgamma(k + 1.0) - std::lgamma(j + 1.0) - std::lgamma(k - j + 1.0) +
                    (x > 0.0 ? j * std::log(x) : (j == 0 ? 0.0 : -1e300)) + lgk -
                    std::lgamma(alpha + 1.0 + j * theta);
        logs[j] = lg;
        signs[j] = ((k + j) % 2 == 0) ? 1.0 : -1.0;
        lmax = std::max(lmax, lg);
    }
    long double sum = 0.0L;
    for (int j = 0; j <= k; ++j) sum += (long double)signs[j] * std::exp((long double)(logs[j] - lmax));
    double result = double(sum) * std::exp(lmax);
    if (std::abs(double(sum)) < 1e-12)
        throw CancellationOverflowError("q_poly lost more than 12 digits to cancellation");
    return result;
}

double p_weighted(int k, double x, const EnsembleParams& params, double tol) {
    params.validate();
    if (k < 0 || k > 60) throw DomainError("p_weighted supports 0 <= k <= 60");
    if (!(x > 0.0)) throw DomainError("p_weighted requires x > 0");
    const double alpha = params.alpha, theta = params.theta;
    const double c = std::max(0.0, 1.0 - (alpha + 1.0) / theta) + 0.5;
    const double lx = std::log(x);

    auto f = [&](cplx s) {
        cplx poly = 1.0; // Gamma(s)/Gamma(s-k) = (s-k)(s-k+1)...(s-1)
        for (int j = 1; j <= k; ++j) poly *= s - double(j);
        return poly * std::exp(special::log_gamma(theta * s + 1.0 - theta + alpha) -
                               theta * s * lx);
    };
    auto q = quad::integrate_vertical(f, {.abscissa = c}, tol);
    double norm = theta * std::pow(x, theta - 1.0) *
                  std::exp(-std::lgamma(alpha + 1.0 + k * theta) - std::lgamma(k + 1.0));
    // (1/(2 pi i)) * line integral; conjugate symmetry makes it real
    return norm * (q.value / cplx(0.0, 2.0 * kPi)).real();
}

double p_weighted_explicit(int k, double x, const EnsembleParams& params) {
    params.validate();
    if (k < 0 || k > 60) throw DomainError("p_weighted_explicit supports 0 <= k <= 60");
    if (!(x > 0.0)) throw DomainError("p_weighted_explicit requires x > 0");
    const double alpha = params.alpha, theta = params.theta;

    // P(s) = prod_{m=1}^{k} ((s-1)/theta + 1 - m), the degree-k factor of
    // the integrand; expand over (alpha+s)_l so each basis element
    // integrates to x^{alpha+l} e^{-x}.
    auto P = [&](long double s) {
        long double prod = 1.0L;
        for (int m = 1; m <= k; ++m)
            prod *= (s - 1.0L) / theta + 1.0L - m;
        return prod;
    };
    std::vector<long double> a(k + 1);
    for (int l = 0; l <= k; ++l) {
        // a_l = (1/l!) sum_i (-1)^i C(l,i) P(-alpha-i)
        long double sum = 0.0L, binom = 1.0L;
        for (int i = 0; i <= l; ++i) {
            sum += (i % 2 == 0 ? binom : -binom) * P(-(long double)alpha - i);
            binom = binom * (l - i) / (i + 1.0L);
        }
        long double lfact = 1.0L;
        for (int i = 2; i <= l; ++i) lfact *= i;
        a[l] = sum / lfact;
    }
    long double poly = 0.0L, xl = 1.0L;
    for (int l = 0; l <= k; ++l) {
        poly += a[l] * xl;
        xl *= x;
    }
    double logw = alpha * std::log(x) - x - std::lgamma(alpha + 1.0 + k * theta) -
                  std::lgamma(k + 1.0);
    return double(poly) * std::exp(logw);
}

namespace {

double integrate_pq(int j, int k, const EnsembleParams& params, PMethod method,
                    bool mellin_variant) {
    const double alpha = params.alpha, theta = params.theta;
    const int kmax = std::max(j, k);
    double cutoff = weight_tail_cutoff(alpha, (j + k) * theta);

    auto pval = [&](int kk, double x) {
        return method == PMethod::Explicit ? p_weighted_explicit(kk, x, params)
                                           : p_weighted(kk, x, params, 5e-12);
    };
    auto f = [&](double x) -> cplx {
        if (x <= 0.0) return 0.0;
        if (mellin_variant)
            return std::pow(x, j * theta) * pval(k, x);
        return pval(j, x) * q_poly(k, std::pow(x, theta), params);
    };
    auto q = quad::integrate_interval(f, 0.0, cutoff, 1e-11,
                                      {.initial_panels_per_segment = 8});
    (void)kmax;
    return q.value.real();
}

} // namespace

double biorthogonality_defect(int j, int k, const EnsembleParams& params, PMethod method) {
    params.validate();
    if (j < 0 || k < 0 || j > 20 || k > 20)
        throw DomainError("biorthogonality_defect supports indices up to 20");
    double val = integrate_pq(j, k, params, method, /*mellin_variant=*/false);
    return std::abs(val - (j == k ? 1.0 : 0.0));
}

double mellin_orthogonality_defect(int j, int k, const EnsembleParams& params,
                                   PMethod method) {
    params.validate();
    if (j < 0 || k < 0 || j > 20 || k > 20)
        throw DomainError("mellin_orthogonality_defect supports indices up to 20");
    double val = integrate_pq(j, k, params, method, /*mellin_variant=*/true);
    return std::abs(val - (j == k ? 1.0 : 0.0));
}

} // namespace bilage::biopoly
