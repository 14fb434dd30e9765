#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mlfrac/errors.hpp"

namespace mlfrac {

using Complex = std::complex<double>;

// Controls truncation of the Mittag-Leffler series. Summation stops once the
// geometric tail bound drops below max(abs_tol, rel_tol * |partial sum|);
// exceeding max_terms raises NonConvergenceError.
struct TruncationPolicy {
    double abs_tol = 1e-14;
    double rel_tol = 1e-12;
    int max_terms = 2000;

    void validate() const;
};

// Two-parameter Mittag-Leffler E_{nu,delta}.
struct MLParams2 {
    double nu;      // > 0
    Complex delta;  // Re > 0
};

// Prabhakar (generalized) Mittag-Leffler E^gamma_{nu,delta}.
struct MLParamsPrabhakar {
    double nu;
    Complex delta;
    Complex gamma;  // Re > 0
};

// Multivariate Mittag-Leffler E^{(gamma_1..gamma_M)}_{nu,delta}. In this
// artifact the gammas are the root multiplicities, but any Re(gamma_j) > 0
// is accepted.
struct MLParamsMultivariate {
    double nu;
    Complex delta;
    std::vector<Complex> gammas;
};

// Principal branch of log Gamma(z). Throws PoleError at non-positive integers.
Complex log_gamma(Complex z);

// 1/Gamma(z), entire; equals 0 at non-positive integers.
Complex recip_gamma(Complex z);

// E_{nu,delta}(z) = sum_k z^k / Gamma(nu k + delta).
Complex ml2(const MLParams2& params, Complex z,
            const TruncationPolicy& policy = {});

// E^gamma_{nu,delta}(z) with Pochhammer-weighted coefficients.
Complex ml_prabhakar(const MLParamsPrabhakar& params, Complex z,
                     const TruncationPolicy& policy = {});

// M-fold series grouped by total degree; per-degree coefficients are the
// discrete convolution of the per-variable coefficient sequences.
Complex ml_multivariate(const MLParamsMultivariate& params,
                        std::span<const Complex> z,
                        const TruncationPolicy& policy = {});

// E_{nu, n nu + l}(z) computed through the shift identity
//   E_{nu,n nu+l}(z) = E_{nu,l}(z)/z^n - sum_{j=1}^n z^{-j}/Gamma((n-j)nu + l),
// used as a cross-check path against direct ml2 evaluation. Reciprocal-gamma
// convention: terms whose Gamma argument is a non-positive integer vanish.
Complex ml_shift_identity(double nu, Complex l, int n, Complex z,
                          const TruncationPolicy& policy = {});

namespace detail {
// Series diagnostics for the CLI and tests.
struct SeriesReport {
    int terms_used = 0;
    double tail_bound = 0.0;
    double roundoff_estimate = 0.0;
};
Complex ml_multivariate_reported(const MLParamsMultivariate& params,
                                 std::span<const Complex> z,
                                 const TruncationPolicy& policy,
                                 SeriesReport* report);
Complex ml2_reported(const MLParams2& params, Complex z,
                     const TruncationPolicy& policy, SeriesReport* report);
}  // namespace detail

}  // namespace mlfrac
