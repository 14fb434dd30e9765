#include "mlfrac/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mlfrac {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_nonpositive_integer(Complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0 &&
           z.real() == std::floor(z.real());
}

// Lanczos approximation, g = 7, 9 coefficients. Valid for Re(z) >= 0.5;
// callers reflect otherwise.
Complex log_gamma_lanczos(Complex z) {
    static const double p[9] = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    z -= 1.0;
    Complex x = p[0];
    for (int i = 1; i < 9; ++i) x += p[i] / (z + static_cast<double>(i));
    Complex t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t +
           std::log(x);
}

}  // namespace

void TruncationPolicy::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_terms < 1)
        throw InvalidArgumentError(
            "TruncationPolicy requires abs_tol > 0, rel_tol > 0, max_terms >= 1");
}

Complex log_gamma(Complex z) {
    if (is_nonpositive_integer(z))
        throw PoleError("log_gamma: pole at non-positive integer " +
                        std::to_string(z.real()));
    if (z.real() >= 0.5) return log_gamma_lanczos(z);
    // Reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z).
    // Good enough for exp(log_gamma) everywhere; the 2*pi*i branch is not
    // normalized away from the real axis, which no caller relies on.
    return std::log(kPi / std::sin(kPi * z)) - log_gamma_lanczos(1.0 - z);
}

Complex recip_gamma(Complex z) {
    if (is_nonpositive_integer(z)) return {0.0, 0.0};
    if (z.real() >= 0.5) return std::exp(-log_gamma_lanczos(z));
    // 1/Gamma(z) = sin(pi z) Gamma(1-z) / pi, entire in z.
    return std::sin(kPi * z) * std::exp(log_gamma_lanczos(1.0 - z)) / kPi;
}

namespace {

void check_common(double nu, Complex delta) {
    if (!(nu > 0.0)) throw InvalidArgumentError("ml: nu must be > 0");
    if (!(delta.real() > 0.0))
        throw InvalidArgumentError("ml: Re(delta) must be > 0");
}

// E_{1,m}(z) for integer m >= 1 via the exponential representation
//   E_{1,m}(z) = (e^z - sum_{i=0}^{m-2} z^i / i!) / z^{m-1}.
// Stable for |z| well away from 0, where the direct series cancels badly.
Complex ml2_exponential_form(int m, Complex z) {
    Complex partial = 0.0;
    Complex zi = 1.0;
    for (int i = 0; i + 2 <= m; ++i) {
        partial += zi;
        zi *= z / static_cast<double>(i + 1);
    }
    return (std::exp(z) - partial) / std::pow(z, m - 1);
}

void check_roundoff(double peak, int terms, double tol,
                    const char* what) {
    const double eps = std::numeric_limits<double>::epsilon();
    double roundoff = peak * eps * std::sqrt(static_cast<double>(terms + 1));
    if (!(roundoff < 1e3 * tol) || !std::isfinite(peak))
        throw NonConvergenceError(
            std::string(what) +
            ": series cancellation exceeds tolerance (roundoff estimate " +
            std::to_string(roundoff) + " vs tol " + std::to_string(tol) + ")");
}

}  // namespace

namespace detail {

Complex ml2_reported(const MLParams2& params, Complex z,
                     const TruncationPolicy& policy, SeriesReport* report) {
    check_common(params.nu, params.delta);
    policy.validate();
    if (z == Complex{0.0, 0.0}) {
        if (report) *report = {1, 0.0, 0.0};
        return recip_gamma(params.delta);
    }
    // nu = 1 with integer second parameter reduces to exponentials; the
    // series cancels catastrophically for large |z|, the closed form does not.
    if (params.nu == 1.0 && params.delta.imag() == 0.0) {
        double m = std::round(params.delta.real());
        if (std::abs(params.delta.real() - m) < 1e-12 && m >= 1 && m <= 64 &&
            std::abs(z) >= 5.0) {
            if (report) *report = {static_cast<int>(m), 0.0, 0.0};
            return ml2_exponential_form(static_cast<int>(m), z);
        }
    }

    const Complex logz = std::log(z);
    Complex sum = 0.0;
    double peak = 0.0;
    Complex lg = log_gamma(params.delta);
    for (int k = 0; k < policy.max_terms; ++k) {
        Complex w = params.nu * k + params.delta;
        Complex term = std::exp(static_cast<double>(k) * logz - lg);
        sum += term;
        peak = std::max(peak, std::abs(term));
        double tol = std::max(policy.abs_tol, policy.rel_tol * std::abs(sum));
        Complex lg_next = log_gamma(w + params.nu);  // = lg of the next term
        // Exact modulus ratio |T_{k+1}/T_k| = |z| exp(Re lg(w) - Re lg(w+nu));
        // it decreases in k, so once below 1/2 the tail is geometric.
        double rho = std::abs(z) * std::exp(lg.real() - lg_next.real());
        if (rho < 0.5) {
            double tail = std::abs(term) * rho / (1.0 - rho);
            if (tail < tol) {
                check_roundoff(peak, k, tol, "ml2");
                if (report) *report = {k + 1, tail, peak * 2.2e-16};
                return sum;
            }
        }
        lg = lg_next;
    }
    throw NonConvergenceError("ml2: max_terms reached before tolerance");
}

Complex ml_multivariate_reported(const MLParamsMultivariate& params,
                                 std::span<const Complex> z,
                                 const TruncationPolicy& policy,
                                 SeriesReport* report) {
    check_common(params.nu, params.delta);
    policy.validate();
    const std::size_t M = params.gammas.size();
    if (M == 0) throw InvalidArgumentError("ml_multivariate: M >= 1 required");
    if (z.size() != M)
        throw InvalidArgumentError(
            "ml_multivariate: argument count does not match gamma count");
    for (const Complex& g : params.gammas)
        if (!(g.real() > 0.0))
            throw InvalidArgumentError("ml_multivariate: Re(gamma_j) must be > 0");

    double zmax = 0.0;
    for (const Complex& zj : z) zmax = std::max(zmax, std::abs(zj));
    if (zmax == 0.0) {
        if (report) *report = {1, 0.0, 0.0};
        return recip_gamma(params.delta);
    }
    const double R = std::max(1.0, zmax);
    const double lnR = std::log(R);

    // Scaled per-variable coefficients a[j][k] = (gamma_j)_k/k! (z_j/R)^k and
    // their running convolutions; conv[M-1][s] gathers total degree s.
    // abs_* are the same convolutions of absolute values, majorizing |conv|.
    std::vector<std::vector<Complex>> a(M), conv(M);
    std::vector<std::vector<double>> abs_a(M), abs_conv(M);

    auto extend_to = [&](int s) {
        for (std::size_t j = 0; j < M; ++j) {
            while (static_cast<int>(a[j].size()) <= s) {
                int k = static_cast<int>(a[j].size());
                Complex next =
                    k == 0 ? Complex{1.0, 0.0}
                           : a[j][k - 1] * (z[j] / R) *
                                 (params.gammas[j] + static_cast<double>(k - 1)) /
                                 static_cast<double>(k);
                a[j].push_back(next);
                abs_a[j].push_back(std::abs(next));
            }
        }
        for (std::size_t j = 0; j < M; ++j) {
            while (static_cast<int>(conv[j].size()) <= s) {
                int t = static_cast<int>(conv[j].size());
                if (j == 0) {
                    conv[0].push_back(a[0][t]);
                    abs_conv[0].push_back(abs_a[0][t]);
                } else {
                    Complex acc = 0.0;
                    double abs_acc = 0.0;
                    for (int i = 0; i <= t; ++i) {
                        acc += conv[j - 1][i] * a[j][t - i];
                        abs_acc += abs_conv[j - 1][i] * abs_a[j][t - i];
                    }
                    conv[j].push_back(acc);
                    abs_conv[j].push_back(abs_acc);
                }
            }
        }
    };

    Complex sum = 0.0;
    double peak = 0.0;
    for (int s = 0; s < policy.max_terms; ++s) {
        extend_to(s + 1);  // one degree ahead for the ratio bound
        Complex wg = params.nu * s + params.delta;
        Complex lg = log_gamma(wg);
        Complex scale = std::exp(static_cast<double>(s) * lnR - lg);
        Complex term = conv[M - 1][s] * scale;
        double bound = abs_conv[M - 1][s] * std::abs(scale);
        sum += term;
        peak = std::max(peak, bound);
        double tol = std::max(policy.abs_tol, policy.rel_tol * std::abs(sum));
        if (bound == 0.0) continue;
        double gamma_ratio =
            std::exp(lg.real() - log_gamma(wg + params.nu).real());
        double rho =
            (abs_conv[M - 1][s + 1] / abs_conv[M - 1][s]) * R * gamma_ratio;
        if (s >= 1 && rho < 0.5) {
            double tail = 2.0 * bound * rho / (1.0 - rho);
            if (tail < tol) {
                check_roundoff(peak, s, tol, "ml_multivariate");
                if (report) *report = {s + 1, tail, peak * 2.2e-16};
                return sum;
            }
        }
    }
    throw NonConvergenceError(
        "ml_multivariate: max_terms reached before tolerance");
}

}  // namespace detail

Complex ml2(const MLParams2& params, Complex z, const TruncationPolicy& policy) {
    return detail::ml2_reported(params, z, policy, nullptr);
}

Complex ml_prabhakar(const MLParamsPrabhakar& params, Complex z,
                     const TruncationPolicy& policy) {
    MLParamsMultivariate mv{params.nu, params.delta, {params.gamma}};
    const Complex zs[1] = {z};
    return detail::ml_multivariate_reported(mv, zs, policy, nullptr);
}

Complex ml_multivariate(const MLParamsMultivariate& params,
                        std::span<const Complex> z,
                        const TruncationPolicy& policy) {
    return detail::ml_multivariate_reported(params, z, policy, nullptr);
}

Complex ml_shift_identity(double nu, Complex l, int n, Complex z,
                          const TruncationPolicy& policy) {
    if (n < 0) throw InvalidArgumentError("ml_shift_identity: n >= 0 required");
    if (n == 0) return ml2({nu, l}, z, policy);
    if (z == Complex{0.0, 0.0})
        throw InvalidArgumentError("ml_shift_identity: z != 0 required");
    Complex value = ml2({nu, l}, z, policy) / std::pow(z, n);
    for (int j = 1; j <= n; ++j)
        value -= std::pow(z, -j) * recip_gamma((n - j) * nu + l);
    return value;
}

}  // namespace mlfrac
