// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bilage/ensemble.hpp"

namespace bilage::biopoly {

/// Bimoment m_{j,k} = Gamma(alpha + 1 + j + k theta).
double bimoment(int j, int k, const EnsembleParams& params);
double log_bimoment(int j, int k, const EnsembleParams& params);

/// log of the bimoment determinant D_n = prod_{k=0}^n k! theta^k
/// Gamma(alpha+1+k theta).
double bimoment_det_log(int n, const EnsembleParams& params);

/// Monic biorthogonal polynomial q_k evaluated at x >= 0 from its
/// explicit binomial expansion (log-space terms, sign tracked).
double q_poly(int k, double x, const EnsembleParams& params);

/// Weighted function x^alpha e^{-x} p_k(x) by the Mellin-Barnes line
/// integral; abscissa c = max{0, 1-(alpha+1)/theta} + 1/2.
double p_weighted(int k, double x, const EnsembleParams& params, double tol = 1e-12);

/// Same function from the terminating Pochhammer expansion: the degree-k
/// polynomial factor of the integrand expanded over the basis
/// (alpha+s)_l, each term integrating to x^{alpha+l} e^{-x} exactly.
/// No quadrature is involved, which makes this the oracle route.
double p_weighted_explicit(int k, double x, const EnsembleParams& params);

enum class PMethod { Explicit, MellinBarnes };

/// |int_0^inf p_weighted(j, x) q_k(x^theta) dx - delta_{jk}|, the
/// numerical biorthogonality defect.
double biorthogonality_defect(int j, int k, const EnsembleParams& params,
                              PMethod method = PMethod::Explicit);

/// |int_0^inf x^{j theta} p_weighted(k, x) dx - delta_{jk}|, the moment
/// orthogonality the Mellin inversion produces.
double mellin_orthogonality_defect(int j, int k, const EnsembleParams& params,
                                   PMethod method = PMethod::Explicit);

} // namespace bilage::biopoly
