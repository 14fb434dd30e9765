#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "mlfrac/laplace_oracle.hpp"
#include "mlfrac/quadrature.hpp"

using namespace mlfrac;
using C = std::complex<double>;

namespace {

double rel_err(C got, C want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

CauchyProblem telegraph(double nu, double lambda, double w, std::vector<C> f) {
    return CauchyProblem(nu, CharPolynomial({C(w), C(2.0 * lambda), C(1.0)}),
                         std::move(f));
}

}  // namespace

TEST_CASE("transform of elementary problems") {
    CauchyProblem expo(1.0, CharPolynomial({C(-0.8), C(1.0)}), {C(1.0)});
    for (C mu : {C(1.5, 0.0), C(2.0, 1.0)})
        CHECK(rel_err(laplace_transform_solution(expo, mu), 1.0 / (mu - 0.8)) <
              1e-13);

    CauchyProblem cosh_p(1.0, CharPolynomial({C(-1.0), C(0.0), C(1.0)}),
                         {C(1.0), C(0.0)});
    for (C mu : {C(2.0, 0.0), C(1.0, 0.7)})
        CHECK(rel_err(laplace_transform_solution(cosh_p, mu),
                      mu / (mu * mu - 1.0)) < 1e-13);

    CHECK_THROWS_AS(laplace_transform_solution(expo, C(-1.0, 0.0)),
                    InvalidArgumentError);
}

TEST_CASE("Laplace pair of the Prabhakar kernel") {
    // int_0^inf e^{-mu t} t^{d-1} E^g_{nu,d}(b t^nu) dt = mu^{nu g - d} / (mu^nu - b)^g
    const double nu = 0.5, d = 1.0, g = 2.0, b = -1.0;
    const C mu(2.0, 0.0);
    TruncationPolicy loose;  // |z| ~ 3.5 at nu = 1/2 costs a few digits
    loose.abs_tol = 1e-11;
    loose.rel_tol = 1e-10;
    auto kernel = [&](double t) {
        return std::pow(t, d - 1.0) *
               ml_prabhakar({nu, d, g}, b * std::pow(t, nu), loose);
    };
    C numeric = integrate(
        [&](double t) { return std::exp(-mu * t) * kernel(t); }, 0.0, 12.0,
        1e-11);
    C closed = std::pow(mu, nu * g - d) / std::pow(std::pow(mu, nu) - b, g);
    CHECK(std::abs(numeric - closed) < 1e-8);
}

TEST_CASE("fixed-Talbot inversion basics") {
    auto f = [](C mu) { return 1.0 / (mu - 1.0); };
    CHECK(rel_err(invert_laplace(f, 1.0), C(M_E, 0.0)) < 1e-10);

    // muu^{nu-1}/(mu^nu - eta) inverts to E_{nu,1}(eta t^nu)
    const double nu = 0.7;
    auto g = [nu](C mu) {
        return std::pow(mu, nu - 1.0) / (std::pow(mu, nu) + 1.0);
    };
    C want = ml2({nu, 1.0}, -1.0);
    CHECK(std::abs(invert_laplace(g, 1.0) - want) < 1e-9);

    CHECK_THROWS_AS(invert_laplace(f, 0.0), InvalidArgumentError);
    // non-analytic garbage: doubling must detect the failure
    auto bad = [](C mu) { return std::exp(mu * mu); };
    CHECK_THROWS_AS(invert_laplace(bad, 1.0), NonConvergenceError);
}

TEST_CASE("round trip: invert(transform) = evaluate") {
    struct CaseDef {
        double nu;
        std::vector<C> conds;
    };
    for (const CaseDef& cdef :
         {CaseDef{0.5, {C(1.0)}}, CaseDef{1.0, {C(1.0), C(0.5)}},
          CaseDef{1.3, {C(1.0), C(-0.2), C(0.3)}}}) {
        // light rate at nu = 1/2: |eta| t^nu must stay inside the range the
        // series can resolve in doubles over the whole t grid
        CauchyProblem p = cdef.nu == 0.5 ? telegraph(0.5, 1.1, 0.9, cdef.conds)
                                         : telegraph(cdef.nu, 2.0, 3.0, cdef.conds);
        SolutionExpansion s = solve_distinct(p);
        auto G = [&](C mu) { return laplace_transform_solution(p, mu); };
        for (double t : {0.5, 1.0, 2.0, 4.0}) {
            C inv = invert_laplace(G, t, 48, 1e-8);
            CHECK(std::abs(inv - s.evaluate(t)) < 1e-6);
        }
    }
}

TEST_CASE("Caputo derivative of monomials") {
    // D^{1/2} t = Gamma(2)/Gamma(3/2) sqrt(t)
    auto lin = [](double t) { return C(t, 0.0); };
    const C init1[1] = {C(0.0)};
    C got = caputo_derivative_numeric(lin, 0.5, 1.0, 1e-4, init1);
    CHECK(std::abs(got - C(2.0 / std::sqrt(M_PI), 0.0)) < 5e-4);

    // constants have zero Caputo derivative for any non-integer nu
    auto cst = [](double) { return C(3.7, -1.2); };
    const C init2[1] = {C(3.7, -1.2)};
    CHECK(std::abs(caputo_derivative_numeric(cst, 0.6, 1.0, 1e-3, init2)) <
          1e-12);

    // nu = 1 degenerates to the backward difference
    auto sq = [](double t) { return C(t * t, 0.0); };
    const C init3[1] = {C(0.0)};
    C d1 = caputo_derivative_numeric(sq, 1.0, 1.0, 1e-3, init3);
    CHECK(std::abs(d1 - C(2.0, 0.0)) < 2e-3);

    // nu in (1,2): D^nu t^2 = Gamma(3)/Gamma(3-nu) t^{2-nu}
    const C init4[2] = {C(0.0), C(0.0)};
    C d2 = caputo_derivative_numeric(sq, 1.3, 0.8, 1e-4, init4);
    C want = 2.0 / std::tgamma(3.0 - 1.3) * std::pow(0.8, 0.7);
    CHECK(std::abs(d2 - want) < 5e-3);

    CHECK_THROWS_AS(caputo_derivative_numeric(lin, 0.5, 1.0, 0.3, init1),
                    InvalidArgumentError);  // t not a grid multiple
    CHECK_THROWS_AS(caputo_derivative_numeric(lin, 1.5, 1.0, 1e-3, init1),
                    InvalidArgumentError);  // needs ceil(nu)=2 derivatives
}

TEST_CASE("Caputo residual of a solved problem decreases with h") {
    CauchyProblem p = telegraph(0.5, 1.1, 0.9, {C(1.0)});
    SolutionExpansion s = solve_distinct(p);
    auto F = [&](double t) { return s.evaluate(t); };
    const double t = 1.0;
    auto residual = [&](double h) {
        // lambda_0 F + lambda_1 D^{0.5} F + D^{1.0} F
        C r = p.poly.coeffs[0] * F(t);
        r += p.poly.coeffs[1] *
             caputo_derivative_numeric(F, 0.5, t, h, p.init_conds);
        r += caputo_derivative_numeric(F, 1.0, t, h, p.init_conds);
        return std::abs(r);
    };
    double r1 = residual(0.02), r2 = residual(0.005);
    CHECK(r2 < r1);
    double order = std::log(r1 / r2) / std::log(4.0);
    CHECK(order >= 0.9);
    CHECK(r2 < 5e-3);
}

TEST_CASE("convolution basics") {
    auto one = [](double) { return C(1.0); };
    CHECK(rel_err(convolve_numeric(one, one, 1.7), C(1.7)) < 1e-11);
    auto ep = [](double x) { return C(std::exp(x), 0.0); };
    auto em = [](double x) { return C(std::exp(-x), 0.0); };
    CHECK(rel_err(convolve_numeric(ep, em, 1.0), C(std::sinh(1.0), 0.0)) <
          1e-11);
    CHECK(convolve_numeric(ep, em, 0.0) == C(0.0));
}

TEST_CASE("convolution theorem for generalized kernels") {
    // conv of x^{d1-1} E^{g1}_{nu,d1}(e1 x^nu) and x^{d2-1} E^{g2}_{nu,d2}(e2 x^nu)
    // equals t^{d1+d2-1} E^{(g1,g2)}_{nu,d1+d2}(e1 t^nu, e2 t^nu)
    const double nu = 0.6, d1 = 1.0, d2 = 1.0, g1 = 1.0, g2 = 2.0;
    const C e1(-0.5, 0.0), e2(0.8, 0.0);
    const double t = 1.3;
    auto f1 = [&](double x) {
        return ml_prabhakar({nu, d1, g1}, e1 * std::pow(x, nu));
    };
    auto f2 = [&](double x) {
        return ml_prabhakar({nu, d2, g2}, e2 * std::pow(x, nu));
    };
    C numeric = convolve_numeric(f1, f2, t, 0.0, 0.0, 1e-10);
    MLParamsMultivariate mp{nu, d1 + d2, {g1, g2}};
    const C zs[2] = {e1 * std::pow(t, nu), e2 * std::pow(t, nu)};
    C closed = std::pow(t, d1 + d2 - 1.0) * ml_multivariate(mp, zs);
    CHECK(std::abs(numeric - closed) < 1e-7);
}

TEST_CASE("convolution theorem with singular endpoints") {
    // fractional first parameters force x^{d-1} endpoint singularities
    const double nu = 0.8, d1 = 0.6, d2 = 0.7;
    const C e1(-0.4, 0.2), e2(0.3, -0.5);
    const double t = 0.9;
    auto f1 = [&](double x) {
        return std::pow(x, d1 - 1.0) *
               ml2({nu, d1}, e1 * std::pow(x, nu));
    };
    auto f2 = [&](double x) {
        return std::pow(x, d2 - 1.0) *
               ml2({nu, d2}, e2 * std::pow(x, nu));
    };
    C numeric = convolve_numeric(f1, f2, t, d1 - 1.0, d2 - 1.0, 1e-10);
    MLParamsMultivariate mp{nu, d1 + d2, {1.0, 1.0}};
    const C zs[2] = {e1 * std::pow(t, nu), e2 * std::pow(t, nu)};
    C closed = std::pow(t, d1 + d2 - 1.0) * ml_multivariate(mp, zs);
    CHECK(std::abs(numeric - closed) < 1e-7);
}

TEST_CASE("M-fold convolution reduces to weighted two-parameter sums") {
    // Proposition-style identity: conv_i x^{d_i-1}E_{nu,d_i}(eta_i x^nu)
    // = t^{sum d - 1} sum_i eta_i^{M-1}/prod_{j!=i}(eta_i-eta_j) E_{nu,sum d}(eta_i t^nu)
    std::mt19937 gen(123);
    std::uniform_real_distribution<double> ur(-1.2, 1.2);
    for (int M : {2, 3}) {
        for (int trial = 0; trial < (M == 2 ? 4 : 2); ++trial) {
            double nu = 0.5 + 0.2 * trial;
            std::vector<double> d(M, 1.0);
            std::vector<C> eta;
            while (static_cast<int>(eta.size()) < M) {
                C e(ur(gen), ur(gen) * 0.3);
                bool ok = std::abs(e) > 0.25;
                for (const C& q : eta) ok = ok && std::abs(e - q) > 0.3;
                if (ok) eta.push_back(e);
            }
            const double t = 1.1;
            double sum_d = M;  // all d_i = 1

            auto kern = [&](int i) {
                return std::function<C(double)>([&, i](double x) {
                    return ml2({nu, d[i]}, eta[i] * std::pow(x, nu));
                });
            };
            C numeric;
            if (M == 2) {
                numeric = convolve_numeric(kern(0), kern(1), t, 0.0, 0.0, 1e-10);
            } else {
                auto inner = [&](double s) {
                    return convolve_numeric(kern(0), kern(1), s, 0.0, 0.0, 1e-10);
                };
                numeric = convolve_numeric(inner, kern(2), t, 0.0, 0.0, 1e-8);
            }
            C closed = 0.0;
            for (int i = 0; i < M; ++i) {
                C w = std::pow(eta[i], M - 1);
                for (int j = 0; j < M; ++j)
                    if (j != i) w /= eta[i] - eta[j];
                closed += w * ml2({nu, sum_d}, eta[i] * std::pow(t, nu));
            }
            closed *= std::pow(t, sum_d - 1.0);
            CHECK(std::abs(numeric - closed) < 1e-7);
        }
    }
}
