#pragma once

#include <array>
#include <span>
#include <vector>

#include "mlfrac/cauchy_solver.hpp"
#include "mlfrac/mc_stats.hpp"
#include "mlfrac/rng.hpp"

namespace mlfrac {

// Finite-velocity random motion: velocities v_0..v_M in R^d, Poisson switch
// rate, initial velocity distribution and switch matrix p_{hk}.
struct MotionSpec {
    std::vector<std::vector<double>> velocities;
    double rate = 1.0;
    std::vector<double> initial_dist;
    std::vector<std::vector<double>> switch_matrix;

    int dimension() const;
    void validate() const;
};

// One realized trajectory up to the simulation horizon: Poisson switch times,
// the velocity index on each inter-switch interval, and the final position.
struct MotionPath {
    std::vector<double> switch_times;
    std::vector<int> velocity_indices;  // size switch_times.size() + 1
    std::vector<double> end_position;
};

MotionPath simulate_path(const MotionSpec& spec, double t, rng::Stream& stream);

// Positions at several (sorted) times along a single trajectory.
std::vector<std::vector<double>> simulate_positions_at(
    const MotionSpec& spec, std::span<const double> times, rng::Stream& stream);

// Mean of exp(i <alpha, X(t)>) over independent paths.
McEstimate empirical_cf(const MotionSpec& spec, double t,
                        std::span<const double> alpha, std::uint64_t samples,
                        std::uint64_t seed);

// Per-path forward difference sum_j (-1)^(order-j) C(order,j) z(j h) / h^order
// estimating the order-th time derivative of the characteristic function at 0+.
McEstimate empirical_cf_derivative(const MotionSpec& spec,
                                   std::span<const double> alpha, int order,
                                   double step, std::uint64_t samples,
                                   std::uint64_t seed);

// d^n/dt^n E exp(i<alpha, X(t)>) at t = 0 from the one-Poisson-event
// short-time expansion; exact for every n >= 0.
Complex cf_initial_derivative(const MotionSpec& spec,
                              std::span<const double> alpha, int n);

// Orthogonal planar motion: velocities (c cos(k pi/2), c sin(k pi/2)),
// uniform start, switches to an orthogonal direction with probability 1/2.
MotionSpec orthogonal_motion_spec(double lambda, double c);

// Three-direction planar motion, uniform start and uniform switch
// (current direction included).
MotionSpec three_direction_motion_spec(double lambda, double c);

// One-dimensional telegraph: velocities +-c, flip at every event.
MotionSpec telegraph_motion_spec(double lambda, double c);

// Fractional quartic problem of the orthogonal motion in Fourier variables
// (alpha, beta), with the characteristic-function initial conditions
// (1, 0, -c^2 s/2, lambda c^2 s/2) truncated to ceil(4 nu); requires
// 0 < nu <= 1 and (alpha, beta) != (0, 0).
CauchyProblem orthogonal_problem(double lambda, double c, double alpha,
                                 double beta, double nu);

// Quartic roots -lambda +- (A +- B)/2 with A = sqrt(lambda^2 - c^2(alpha-beta)^2),
// B = sqrt(lambda^2 - c^2(alpha+beta)^2).
std::array<Complex, 4> orthogonal_roots_closed_form(double lambda, double c,
                                                    double alpha, double beta);

// Characteristic function of the orthogonal motion at nu = 1:
// (1/4) sum over sign pairs (1 +- lambda/A)(1 +- lambda/B) E_{1,1}(eta t).
// Throws PoleError at the resonant A = 0 or B = 0 parameter points.
Complex orthogonal_cf_nu1(double lambda, double c, double alpha, double beta,
                          double t);

// Cubic problem of the three-direction motion in Fourier variables, with
// conditions (1, 0, -c^2 s/2) truncated to ceil(3 nu); requires 0 < nu <= 1.
// Coefficients follow the paper that introduced the equation; see the
// simulation-validated rate and sign conventions in the tests.
CauchyProblem three_direction_problem(double lambda, double c, double alpha,
                                      double beta, double nu);

struct TelegraphDecompositionRow {
    double alpha;
    double beta;
    Complex direct;    // orthogonal motion, simulated directly
    Complex composed;  // (U + V, U - V) from two independent telegraphs
    double combined_se;
};

// Empirical check of the decomposition X = U + V, Y = U - V with U, V
// independent telegraphs of rate lambda/2 and velocities +-c/2.
struct TelegraphDecompositionReport {
    std::vector<TelegraphDecompositionRow> rows;
    double max_abs_diff = 0.0;
    double max_sigma_ratio = 0.0;  // max |direct - composed| / combined se

    bool pass(double n_sigma = 3.0) const { return max_sigma_ratio <= n_sigma; }
};

TelegraphDecompositionReport telegraph_decomposition_check(
    double lambda, double c, double t, std::uint64_t samples,
    std::uint64_t seed);

}  // namespace mlfrac
