#include "mlfrac/subordination.hpp"

#include <cmath>

#include "mlfrac/mc_stats.hpp"
#include "mlfrac/quadrature.hpp"

namespace mlfrac {

void GVariableSpec::validate() const {
    if (n < 2) throw InvalidArgumentError("GVariableSpec: n >= 2 required");
    if (j < 1 || j > n - 1)
        throw InvalidArgumentError("GVariableSpec: j in 1..n-1 required");
    if (!(t > 0.0)) throw InvalidArgumentError("GVariableSpec: t > 0 required");
}

double g_density(const GVariableSpec& spec, double y) {
    spec.validate();
    if (!(y > 0.0))
        throw InvalidArgumentError("g_density: y > 0 required");
    const double n = spec.n, j = spec.j, t = spec.t;
    const double c = std::pow(std::pow(n, n) * t, 1.0 / (n - 1.0));
    double log_norm = (j / (n - 1.0) - 1.0) * std::log(n) +
                      j / (n * (n - 1.0)) * std::log(t) + std::lgamma(j / n);
    return std::exp((j - 1.0) * std::log(y) - std::pow(y, n) / c - log_norm);
}

double sample_g(const GVariableSpec& spec, rng::Stream& stream) {
    spec.validate();
    const double n = spec.n;
    const double c = std::pow(std::pow(n, n) * spec.t, 1.0 / (n - 1.0));
    double w = stream.gamma(spec.j / n);
    return std::pow(c * w, 1.0 / n);
}

double mellin_g(const GVariableSpec& spec, double s) {
    spec.validate();
    if (!(s > 0.0)) throw InvalidArgumentError("mellin_g: s > 0 required");
    const double n = spec.n, j = spec.j;
    return std::pow(n * std::pow(spec.t, 1.0 / n), (s - 1.0) / (n - 1.0)) *
           std::exp(std::lgamma((s + j - 1.0) / n) - std::lgamma(j / n));
}

SubordinationPlan build_associated_problem(const CauchyProblem& target, int n,
                                           const TruncationPolicy& policy) {
    if (n < 1) throw InvalidArgumentError("build_associated_problem: n >= 1");
    if (target.forcing)
        throw InvalidArgumentError(
            "build_associated_problem: subordination covers homogeneous problems");
    const double base_nu = target.nu * n;
    const int N = target.order();
    const int base_count = ceil_fuzzy(base_nu * N);
    std::vector<Complex> padded(base_count, Complex{0.0, 0.0});
    for (std::size_t h = 0; h < target.init_conds.size(); ++h) {
        std::size_t idx = h * static_cast<std::size_t>(n);
        if (idx >= padded.size())
            throw InvalidArgumentError(
                "build_associated_problem: condition index out of range");
        padded[idx] = target.init_conds[h];
    }
    CauchyProblem base(base_nu, target.poly, std::move(padded), std::nullopt,
                       target.spectrum);
    auto expand = [&](const CauchyProblem& p) {
        return p.spectrum.all_simple() ? solve_distinct(p, policy)
                                       : solve_general(p, policy);
    };
    SolutionExpansion te = expand(target);
    SolutionExpansion be = expand(base);
    return SubordinationPlan{base_nu, n,         target, std::move(base),
                             std::move(te), std::move(be)};
}

McEstimate subordinate_mc(const SubordinationPlan& plan, double t,
                          std::uint64_t samples, std::uint64_t seed) {
    if (plan.divisor == 1) {
        Complex v = plan.base_expansion.evaluate(t);
        return McEstimate{v, 0.0, 0.0, samples, seed};
    }
    const int n = plan.divisor;
    return detail::run_mc(samples, seed, [&](rng::Stream& stream) {
        double y = 1.0;
        for (int j = 1; j <= n - 1; ++j)
            y *= sample_g({n, j, t}, stream);
        return plan.base_expansion.evaluate(y);
    });
}

Complex subordinate_quadrature_n2(const SubordinationPlan& plan, double t,
                                  double tol) {
    if (plan.divisor != 2)
        throw InvalidArgumentError("subordinate_quadrature_n2: divisor must be 2");
    // E F(|B(2t)|) = 2/sqrt(pi) * int_0^inf exp(-u^2) F(2 sqrt(t) u) du
    const double scale = 2.0 * std::sqrt(t);
    auto integrand = [&](double u) {
        return std::exp(-u * u) * plan.base_expansion.evaluate(scale * u);
    };
    Complex v = integrate(integrand, 0.0, 8.5, tol * 0.1);
    return v * (2.0 / std::sqrt(3.14159265358979323846));
}

McEstimate iterated_brownian_mc(const SubordinationPlan& plan, int k, double t,
                                std::uint64_t samples, std::uint64_t seed) {
    if (k < 1) throw InvalidArgumentError("iterated_brownian_mc: k >= 1");
    if (plan.divisor != (1 << k))
        throw InvalidArgumentError(
            "iterated_brownian_mc: plan divisor must equal 2^k");
    return detail::run_mc(samples, seed, [&](rng::Stream& stream) {
        double tau = t;
        for (int i = 0; i < k; ++i)
            tau = std::sqrt(2.0 * tau) * std::abs(stream.normal());
        return plan.base_expansion.evaluate(tau);
    });
}

}  // namespace mlfrac
