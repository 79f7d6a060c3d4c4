// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "bilage/biopoly.hpp"
#include "bilage/errors.hpp"
#include "bilage/special.hpp"

using namespace bilage;
namespace bp = bilage::biopoly;

namespace {

// n <= 6 reference determinant: Gaussian elimination with long doubles on
// the explicitly assembled bimoment matrix.
long double det_direct(int n, const EnsembleParams& p) {
    int m = n + 1;
    std::vector<std::vector<long double>> a(m, std::vector<long double>(m));
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
            a[j][k] = std::exp((long double)std::lgamma(p.alpha + 1.0 + j + k * p.theta));
    long double det = 1.0L;
    for (int c = 0; c < m; ++c) {
        int piv = c;
        for (int r = c + 1; r < m; ++r)
            if (std::abs((double)a[r][c]) > std::abs((double)a[piv][c])) piv = r;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (int r = c + 1; r < m; ++r) {
            long double f = a[r][c] / a[c][c];
            for (int cc = c; cc < m; ++cc) a[r][cc] -= f * a[c][cc];
        }
    }
    return det;
}

} // namespace

TEST_CASE("bimoment fixed values") {
    CHECK(bp::bimoment(0, 0, {0.0, 1.0, 1}) == doctest::Approx(1.0));
    CHECK(bp::bimoment(1, 1, {0.0, 1.0, 1}) == doctest::Approx(2.0));
    CHECK(bp::bimoment(0, 2, {0.5, 1.5, 1}) ==
          doctest::Approx(std::exp(std::lgamma(4.5))).epsilon(1e-13));
    CHECK(bp::bimoment(0, 2, {0.5, 1.5, 1}) == doctest::Approx(11.6317284).epsilon(1e-7));
    CHECK_THROWS_AS(bp::bimoment(200, 200, {0.0, 2.0, 1}), OverflowError);
}

TEST_CASE("bimoment determinant closed form vs direct elimination") {
    CHECK(bp::bimoment_det_log(0, {0.0, 1.0, 1}) == doctest::Approx(0.0));
    // n=1, alpha=0, theta=1: det [[1,1],[1,2]] = 1
    CHECK(bp::bimoment_det_log(1, {0.0, 1.0, 1}) == doctest::Approx(0.0).epsilon(1e-12));

    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> da(-0.8, 2.0), dt(0.5, 2.5);
    for (int rep = 0; rep < 12; ++rep) {
        EnsembleParams p{da(rng), dt(rng), 1};
        for (int n = 0; n <= 6; ++n) {
            long double det = det_direct(n, p);
            REQUIRE(std::abs((double)det) > 0.0);
            double log_direct = std::log(std::abs((double)det));
            CHECK(bp::bimoment_det_log(n, p) ==
                  doctest::Approx(log_direct).epsilon(1e-9));
        }
    }
}

TEST_CASE("q_poly explicit values") {
    EnsembleParams p01{0.0, 1.0, 1};
    CHECK(bp::q_poly(0, 3.7, p01) == doctest::Approx(1.0));
    for (double x : {0.0, 0.5, 2.0, 7.0})
        CHECK(bp::q_poly(1, x, p01) == doctest::Approx(x - 1.0).epsilon(1e-13));
    // q_1 = x - Gamma(alpha+1+theta)/Gamma(alpha+1)
    EnsembleParams p12{1.0, 2.0, 1};
    CHECK(bp::q_poly(1, 0.0, p12) ==
          doctest::Approx(-std::tgamma(4.0) / std::tgamma(2.0)).epsilon(1e-13));
    // q_2(0) at alpha=0, theta=2: Gamma(5)/Gamma(1) = 24
    CHECK(bp::q_poly(2, 0.0, {0.0, 2.0, 1}) == doctest::Approx(24.0).epsilon(1e-13));
}

TEST_CASE("q_poly residue form of the closed-contour representation") {
    // q_k(x) = G(a+1+kt) k! sum_j Res_{t=j} [G(t-k)/(G(t+1) G(a+1+t theta))] x^j
    // with Res_{t=j} G(t-k) = (-1)^{k-j}/(k-j)!
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> da(-0.7, 1.5), dt(0.6, 2.4), dx(0.0, 6.0);
    for (int rep = 0; rep < 25; ++rep) {
        EnsembleParams p{da(rng), dt(rng), 1};
        int k = 1 + int(rep % 10);
        double x = dx(rng);
        long double sum = 0.0L;
        for (int j = 0; j <= k; ++j) {
            long double res = ((k - j) % 2 == 0 ? 1.0L : -1.0L) /
                              std::exp((long double)std::lgamma(double(k - j + 1)));
            sum += res * std::pow((long double)x, j) /
                   std::exp((long double)(std::lgamma(double(j + 1)) +
                                          std::lgamma(p.alpha + 1.0 + j * p.theta)));
        }
        double expect = double(sum) * std::exp(std::lgamma(p.alpha + 1.0 + k * p.theta) +
                                               std::lgamma(double(k + 1)));
        CHECK(bp::q_poly(k, x, p) == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("q_poly is monic (leading coefficient by finite differences)") {
    // step 20 keeps the x^k term on top of the Gamma-scale constants, so
    // the k-th difference recovers the leading coefficient without losing
    // digits to cancellation
    const long double h = 20.0L;
    for (int k = 1; k <= 10; ++k) {
        EnsembleParams p{0.5, 1.5, 1};
        long double acc = 0.0L, binom = 1.0L;
        for (int i = 0; i <= k; ++i) {
            acc += ((k - i) % 2 == 0 ? binom : -binom) * bp::q_poly(k, double(h * i), p);
            binom = binom * (k - i) / (i + 1.0L);
        }
        long double kfact_hk = 1.0L;
        for (int i = 1; i <= k; ++i) kfact_hk *= i * h;
        CHECK(std::abs(double(acc / kfact_hk) - 1.0) < 1e-9);
    }
}

TEST_CASE("p_weighted basics") {
    EnsembleParams p01{0.0, 1.0, 1};
    // k = 0: p_0 = 1 and the weight at x=1 is e^{-1}
    CHECK(bp::p_weighted(0, 1.0, p01) == doctest::Approx(std::exp(-1.0)).epsilon(1e-11));
    CHECK(bp::p_weighted_explicit(0, 1.0, p01) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("Mellin-Barnes and Pochhammer-expansion routes agree") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> da(-0.7, 1.5), dt(0.6, 2.5), dx(0.1, 8.0);
    for (int rep = 0; rep < 20; ++rep) {
        EnsembleParams p{da(rng), dt(rng), 1};
        int k = rep % 7;
        double x = dx(rng);
        double mb = bp::p_weighted(k, x, p, 1e-13);
        double ex = bp::p_weighted_explicit(k, x, p);
        CHECK(std::abs(mb - ex) < 1e-10 * std::max(1.0, std::abs(ex)));
    }
}

TEST_CASE("polynomial factor of the integrand is the Pochhammer product") {
    // Gamma(s)/Gamma(s-k) sampled off the poles equals (s-k)...(s-1), and
    // its (k+1)-st finite difference vanishes (degree k in s).
    using special::cplx;
    int k = 4;
    auto ratio = [&](cplx s) {
        return std::exp(special::log_gamma(s) - special::log_gamma(s - double(k)));
    };
    auto prod = [&](cplx s) {
        cplx r = 1.0;
        for (int j = 1; j <= k; ++j) r *= s - double(j);
        return r;
    };
    for (cplx s : {cplx(5.3, 0.4), cplx(6.1, -1.0), cplx(7.7, 2.2)})
        CHECK(std::abs(ratio(s) - prod(s)) < 1e-10 * std::abs(prod(s)));
    // degree check: 6-point finite difference of a degree-4 polynomial is ~0
    cplx fd = 0.0;
    double binom[6] = {1, -5, 10, -10, 5, -1};
    for (int i = 0; i < 6; ++i) fd += binom[i] * prod(cplx(10.0 + i, 0.0));
    CHECK(std::abs(fd) < 1e-8);
}

TEST_CASE("span check: k=2 weighted function lies in span{x^l e^{-x}}") {
    EnsembleParams p{0.0, 1.0, 1};
    // least-squares fit of p_weighted(2, x) against x^l e^{-x}, l = 0..2
    const int npts = 50;
    std::array<std::array<long double, 3>, 3> ata{};
    std::array<long double, 3> atb{};
    std::vector<double> xs(npts), ys(npts);
    for (int i = 0; i < npts; ++i) {
        double x = 0.2 + 10.0 * i / (npts - 1.0);
        xs[i] = x;
        ys[i] = bp::p_weighted(2, x, p, 1e-13);
        long double b[3] = {std::exp((long double)-x), x * std::exp((long double)-x),
                            (long double)x * x * std::exp((long double)-x)};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) ata[r][c] += b[r] * b[c];
            atb[r] += b[r] * ys[i];
        }
    }
    // solve the 3x3 normal equations
    std::array<std::array<long double, 4>, 3> m{};
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) m[r][c] = ata[r][c];
        m[r][3] = atb[r];
    }
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::abs((double)m[r][c]) > std::abs((double)m[piv][c])) piv = r;
        std::swap(m[piv], m[c]);
        for (int r = 0; r < 3; ++r) {
            if (r == c) continue;
            long double f = m[r][c] / m[c][c];
            for (int cc = c; cc < 4; ++cc) m[r][cc] -= f * m[c][cc];
        }
    }
    double coef[3];
    for (int r = 0; r < 3; ++r) coef[r] = double(m[r][3] / m[r][r]);
    double max_resid = 0.0;
    for (int i = 0; i < npts; ++i) {
        double fit = (coef[0] + coef[1] * xs[i] + coef[2] * xs[i] * xs[i]) *
                     std::exp(-xs[i]);
        max_resid = std::max(max_resid, std::abs(fit - ys[i]));
    }
    CHECK(max_resid < 1e-8);
}

TEST_CASE("biorthogonality defects") {
    CHECK(bp::biorthogonality_defect(0, 0, {0.0, 1.0, 1}) < 1e-8);
    CHECK(bp::biorthogonality_defect(0, 1, {0.0, 1.0, 1}) < 1e-8);
    CHECK(bp::biorthogonality_defect(3, 3, {0.5, 2.0, 1}) < 1e-7);
    // the Mellin-Barnes route for a couple of spot pairs
    CHECK(bp::biorthogonality_defect(1, 1, {0.0, 1.0, 1}, bp::PMethod::MellinBarnes) < 1e-7);
    CHECK(bp::biorthogonality_defect(0, 2, {0.5, 2.0, 1}, bp::PMethod::MellinBarnes) < 1e-7);
}

TEST_CASE("Mellin moment orthogonality") {
    EnsembleParams p{0.5, 1.5, 1};
    for (int k = 0; k <= 5; ++k)
        for (int j = 0; j <= k; ++j)
            CHECK(bp::mellin_orthogonality_defect(j, k, p) < 1e-7);
}
