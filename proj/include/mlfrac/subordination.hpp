#pragma once

#include <cstdint>

#include "mlfrac/cauchy_solver.hpp"
#include "mlfrac/mc_stats.hpp"
#include "mlfrac/rng.hpp"

namespace mlfrac {

// G^{(n)}_j(t): positive random variable with generalized-gamma density
//   y^{j-1} exp(-y^n / (n^n t)^{1/(n-1)}) / (n^{j/(n-1)-1} t^{j/(n(n-1))} Gamma(j/n)).
// For n = 2 this is |B(2t)| with B standard Brownian motion.
struct GVariableSpec {
    int n;     // >= 2
    int j;     // 1..n-1
    double t;  // > 0

    void validate() const;
};

double g_density(const GVariableSpec& spec, double y);

// Exact draw via the power transform Y = (c W)^{1/n}, W ~ Gamma(j/n, 1),
// c = (n^n t)^{1/(n-1)}.
double sample_g(const GVariableSpec& spec, rng::Stream& stream);

// Mellin transform E[Y^{s-1}] = (n t^{1/n})^{(s-1)/(n-1)} Gamma((s+j-1)/n)/Gamma(j/n).
double mellin_g(const GVariableSpec& spec, double s);

// Pairs a target problem of parameter nu/n with its associated base problem
// of parameter nu, whose l-th initial condition is f_{l/n} when n | l and 0
// otherwise. Expansions are prepared once (distinct-root form when possible).
struct SubordinationPlan {
    double base_nu;
    int divisor;
    CauchyProblem target;
    CauchyProblem base;
    SolutionExpansion target_expansion;
    SolutionExpansion base_expansion;
};

SubordinationPlan build_associated_problem(const CauchyProblem& target, int n,
                                           const TruncationPolicy& policy = {});

// Monte Carlo mean of F_nu evaluated at prod_{j=1}^{n-1} G_j^{(n)}(t) with
// independent G_j per draw; estimates F_{nu/n}(t).
McEstimate subordinate_mc(const SubordinationPlan& plan, double t,
                          std::uint64_t samples, std::uint64_t seed);

// Deterministic n = 2 path: expectation over the half-normal time change by
// adaptive quadrature.
Complex subordinate_quadrature_n2(const SubordinationPlan& plan, double t,
                                  double tol = 1e-8);

// k-fold composition |B_k(2 |B_{k-1}(2 |...|B_1(2t)|...)|)| estimating
// F_{nu/2^k}(t); the plan must be built with divisor 2^k.
McEstimate iterated_brownian_mc(const SubordinationPlan& plan, int k, double t,
                                std::uint64_t samples, std::uint64_t seed);

}  // namespace mlfrac
