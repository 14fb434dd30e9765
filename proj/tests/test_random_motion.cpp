#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "mlfrac/random_motion.hpp"
#include "oracle_helpers.hpp"

using namespace mlfrac;
using C = std::complex<double>;

TEST_CASE("motion spec validation") {
    MotionSpec bad = telegraph_motion_spec(1.0, 1.0);
    bad.initial_dist = {0.6, 0.6};
    CHECK_THROWS_AS(bad.validate(), InvalidArgumentError);
    bad = telegraph_motion_spec(1.0, 1.0);
    bad.switch_matrix[0] = {0.5, 0.2};
    CHECK_THROWS_AS(bad.validate(), InvalidArgumentError);
    bad = telegraph_motion_spec(-1.0, 1.0);
    CHECK_THROWS_AS(bad.validate(), InvalidArgumentError);
}

TEST_CASE("degenerate paths") {
    rng::Stream stream(1, 0);
    MotionSpec orth = orthogonal_motion_spec(2.0, 1.0);
    MotionPath p0 = simulate_path(orth, 0.0, stream);
    CHECK(p0.end_position[0] == 0.0);
    CHECK(p0.end_position[1] == 0.0);

    MotionSpec single;
    single.velocities = {{0.3, -0.4}};
    single.rate = 2.0;
    single.initial_dist = {1.0};
    single.switch_matrix = {{1.0}};
    MotionPath p1 = simulate_path(single, 2.5, stream);
    CHECK(std::abs(p1.end_position[0] - 0.75) < 1e-12);
    CHECK(std::abs(p1.end_position[1] + 1.0) < 1e-12);
}

TEST_CASE("path bookkeeping reproduces the displacement sum") {
    rng::Stream stream(77, 0);
    MotionSpec orth = orthogonal_motion_spec(3.0, 1.3);
    const double t = 2.0;
    for (int trial = 0; trial < 200; ++trial) {
        MotionPath p = simulate_path(orth, t, stream);
        REQUIRE(p.velocity_indices.size() == p.switch_times.size() + 1);
        double x = 0.0, y = 0.0, prev = 0.0;
        for (std::size_t i = 0; i < p.switch_times.size(); ++i) {
            CHECK(p.switch_times[i] > prev);
            double hold = p.switch_times[i] - prev;
            x += orth.velocities[p.velocity_indices[i]][0] * hold;
            y += orth.velocities[p.velocity_indices[i]][1] * hold;
            prev = p.switch_times[i];
        }
        x += orth.velocities[p.velocity_indices.back()][0] * (t - prev);
        y += orth.velocities[p.velocity_indices.back()][1] * (t - prev);
        CHECK(std::abs(x - p.end_position[0]) < 1e-12);
        CHECK(std::abs(y - p.end_position[1]) < 1e-12);
    }
}

TEST_CASE("support of the orthogonal and three-direction motions") {
    rng::Stream stream(5, 0);
    const double c = 1.0, t = 1.7;
    MotionSpec orth = orthogonal_motion_spec(2.0, c);
    for (int i = 0; i < 20000; ++i) {
        MotionPath p = simulate_path(orth, t, stream);
        CHECK(std::abs(p.end_position[0]) + std::abs(p.end_position[1]) <=
              c * t + 1e-9);
    }
    MotionSpec three = three_direction_motion_spec(1.5, c);
    const double r3 = std::sqrt(3.0);
    for (int i = 0; i < 20000; ++i) {
        MotionPath p = simulate_path(three, t, stream);
        double x = p.end_position[0], y = p.end_position[1];
        CHECK(x >= -c * t / 2.0 - 1e-9);
        CHECK(x <= c * t + 1e-9);
        CHECK(y >= (x - c * t) / r3 - 1e-9);
        CHECK(y <= (c * t - x) / r3 + 1e-9);
    }
}

TEST_CASE("empirical characteristic function basics") {
    MotionSpec orth = orthogonal_motion_spec(2.0, 1.0);
    const double zero[2] = {0.0, 0.0};
    McEstimate at0 = empirical_cf(orth, 1.0, zero, 5000, 3);
    CHECK(at0.value == C(1.0, 0.0));
    CHECK(at0.std_error() == 0.0);
    const double ab[2] = {1.0, 0.5};
    McEstimate est = empirical_cf(orth, 1.0, ab, 20000, 4);
    CHECK(std::abs(est.value) <= 1.0 + 3.0 * est.std_error());
    CHECK(std::abs(est.value - orthogonal_cf_nu1(2.0, 1.0, 1.0, 0.5, 1.0)) <
          4.0 * est.std_error());
}

TEST_CASE("initial derivatives of the characteristic function") {
    MotionSpec orth = orthogonal_motion_spec(2.0, 1.0);
    const double a = 0.8, b = -0.6;
    const double ab[2] = {a, b};
    const double s = a * a + b * b;

    CHECK(cf_initial_derivative(orth, ab, 0) == C(1.0, 0.0));
    // drift-free: first derivative vanishes
    CHECK(std::abs(cf_initial_derivative(orth, ab, 1)) < 1e-14);
    // second derivative -c^2 s / 2
    CHECK(std::abs(cf_initial_derivative(orth, ab, 2) - C(-s / 2.0, 0.0)) <
          1e-12);
    // third derivative lambda c^2 s / 2
    CHECK(std::abs(cf_initial_derivative(orth, ab, 3) - C(2.0 * s / 2.0, 0.0)) <
          1e-12);

    MotionSpec three = three_direction_motion_spec(1.5, 1.0);
    CHECK(std::abs(cf_initial_derivative(three, ab, 1)) < 1e-14);
    CHECK(std::abs(cf_initial_derivative(three, ab, 2) - C(-s / 2.0, 0.0)) <
          1e-12);
    // third derivative (1/2) lam c^2 s + (3/4) i c^3 a b^2 - (1/4) i c^3 a^3;
    // this pins the rate convention of the governing cubic (see below)
    C want3(0.75 * s, 0.75 * a * b * b - 0.25 * a * a * a);
    CHECK(std::abs(cf_initial_derivative(three, ab, 3) - want3) < 1e-12);

    // biased 1D motion: nonzero mean velocity shows up in n = 1
    MotionSpec biased = telegraph_motion_spec(1.0, 1.0);
    biased.initial_dist = {0.7, 0.3};
    const double al[1] = {0.9};
    C d1 = cf_initial_derivative(biased, al, 1);
    CHECK(std::abs(d1 - C(0.0, 0.9 * (0.7 - 0.3))) < 1e-14);

    // general formula at n = 2 against the displayed second-derivative form
    C d2 = cf_initial_derivative(biased, al, 2);
    double ak[2] = {0.9, -0.9};
    C direct = 0.0;
    double p[2] = {0.7, 0.3};
    for (int k = 0; k < 2; ++k)
        direct += -2.0 * 1.0 * p[k] * C(0.0, ak[k]) - p[k] * ak[k] * ak[k];
    // switch matrix flips: sum_hk p_h p_hk (a_h + a_k) = 0 here
    CHECK(std::abs(d2 - direct) < 1e-13);
}

TEST_CASE("short-time finite differences of the simulated cf") {
    MotionSpec orth = orthogonal_motion_spec(2.0, 1.0);
    const double ab[2] = {1.0, 0.5};
    const double t = 0.004;  // below 0.01 / lambda
    McEstimate d1 = empirical_cf_derivative(orth, ab, 1, t, 400000, 11);
    C want1 = cf_initial_derivative(orth, ab, 1);
    double trunc1 = 0.5 * t * std::abs(cf_initial_derivative(orth, ab, 2));
    CHECK(std::abs(d1.value - want1) <=
          3.0 * d1.std_error() + 1.5 * trunc1 + 1e-12);

    McEstimate d2 = empirical_cf_derivative(orth, ab, 2, t, 400000, 12);
    C want2 = cf_initial_derivative(orth, ab, 2);
    double trunc2 = t * std::abs(cf_initial_derivative(orth, ab, 3)) * 2.0;
    CHECK(std::abs(d2.value - want2) <=
          3.0 * d2.std_error() + 1.5 * trunc2 + 1e-12);
}

TEST_CASE("orthogonal quartic: closed-form roots match the coefficients") {
    const double lambda = 2.0, c = 1.0;
    for (auto [a, b] : {std::pair{1.0, 1.0}, {0.5, 0.8}, {1.5, 0.2},
                        {0.3, -1.1}}) {
        CauchyProblem p = orthogonal_problem(lambda, c, a, b, 1.0);
        auto closed = orthogonal_roots_closed_form(lambda, c, a, b);
        RootSpectrum spec;
        spec.roots.assign(closed.begin(), closed.end());
        spec.mults.assign(4, 1);
        std::vector<C> rec = expand_from_roots(spec);
        double scale = 0.0;
        for (const C& q : p.poly.coeffs) scale = std::max(scale, std::abs(q));
        for (int k = 0; k <= 4; ++k)
            CHECK(std::abs(rec[k] - p.poly.coeffs[k]) <= 1e-10 * scale);
    }
    CHECK_THROWS_AS(orthogonal_problem(lambda, c, 0.0, 0.0, 1.0), ZeroRootError);
    CHECK(orthogonal_problem(lambda, c, 1.0, 0.5, 0.6).init_conds.size() == 3);
    CHECK(orthogonal_problem(lambda, c, 1.0, 0.5, 0.4).init_conds.size() == 2);
}

TEST_CASE("orthogonal closed form vs quartic solve and resonance") {
    const double lambda = 2.0, c = 1.0, t = 1.0;
    for (auto [a, b] : {std::pair{0.5, 0.8}, {1.5, 0.2}}) {
        CauchyProblem p = orthogonal_problem(lambda, c, a, b, 1.0);
        C via_solver = evaluate_solution(solve_distinct(p), t);
        C via_formula = orthogonal_cf_nu1(lambda, c, a, b, t);
        CHECK(std::abs(via_solver - via_formula) < 1e-10);
    }
    // resonant point: closed form must refuse, the general expansion works
    CHECK_THROWS_AS(orthogonal_cf_nu1(lambda, c, 1.0, 1.0, 1.0), PoleError);
    CauchyProblem res = orthogonal_problem(lambda, c, 1.0, 1.0, 1.0);
    CHECK_FALSE(res.spectrum.all_simple());
    C via_general = evaluate_solution(solve_general(res), t);
    std::vector<C> monic = res.poly.coeffs;
    C via_rk4 = oracle::rk4_solve(monic, res.init_conds, t, 2e-5);
    CHECK(std::abs(via_general - via_rk4) < 1e-6);
}

TEST_CASE("orthogonal nu=1 closed form against simulation") {
    const double lambda = 2.0, c = 1.0;
    for (auto [a, b, t] :
         {std::tuple{1.0, 0.5, 1.0}, {0.5, 0.8, 0.5}, {1.5, 0.2, 2.0}}) {
        const double ab[2] = {a, b};
        McEstimate emp = empirical_cf(orthogonal_motion_spec(lambda, c), t, ab,
                                      100000, 21);
        C closed = orthogonal_cf_nu1(lambda, c, a, b, t);
        CHECK(std::abs(emp.value - closed) < 3.5 * emp.std_error());
    }
}

TEST_CASE("three-direction problem construction") {
    const double lambda = 1.5, c = 1.0, a = 0.7, b = 0.3;
    CauchyProblem p = three_direction_problem(lambda, c, a, b, 1.0);
    const double s = a * a + b * b;
    CHECK(std::abs(p.poly.coeffs[3] - C(1.0)) < 1e-15);
    CHECK(std::abs(p.poly.coeffs[2] - C(4.5 * lambda)) < 1e-14);
    CHECK(std::abs(p.poly.coeffs[1] -
                   C(std::pow(1.5, 4) * lambda * lambda + 0.75 * s)) < 1e-14);
    CHECK(std::abs(p.poly.coeffs[0] -
                   C(9.0 * lambda * s / 8.0,
                     0.75 * a * b * b - 0.25 * a * a * a)) < 1e-14);
    CHECK(p.init_conds.size() == 3);
    CHECK(three_direction_problem(lambda, c, a, b, 1.0 / 3.0).init_conds.size() == 1);
    CHECK(three_direction_problem(lambda, c, a, b, 0.5).init_conds.size() == 2);
    CHECK_THROWS_AS(three_direction_problem(lambda, c, 0.0, 0.0, 1.0),
                    ZeroRootError);
}

TEST_CASE("three-direction cubic validated against simulation") {
    // The printed cubic with rate parameter L governs the uniform-switching
    // motion of rate (9/4) L under the e^{-i<alpha,X>} convention. Both the
    // 9/4 rate factor and the conjugation are fixed empirically here: the
    // motion of rate lambda matches the conjugated solution of the cubic
    // with parameter (4/9) lambda, and decisively fails the literal reading.
    const double lambda = 1.5, c = 1.0, a = 0.7, b = 0.3, t = 1.0;
    const double ab[2] = {a, b};
    McEstimate emp = empirical_cf(three_direction_motion_spec(lambda, c), t, ab,
                                  400000, 33);

    CauchyProblem adjusted =
        three_direction_problem(4.0 * lambda / 9.0, c, a, b, 1.0);
    C matched = std::conj(evaluate_solution(solve_distinct(adjusted), t));
    CHECK(std::abs(emp.value - matched) < 3.5 * emp.std_error());

    CauchyProblem literal = three_direction_problem(lambda, c, a, b, 1.0);
    C unmatched = evaluate_solution(solve_distinct(literal), t);
    CHECK(std::abs(emp.value - unmatched) > 10.0 * emp.std_error());
    CHECK(std::abs(emp.value - std::conj(unmatched)) > 10.0 * emp.std_error());
}

TEST_CASE("telegraph decomposition of the orthogonal motion") {
    TelegraphDecompositionReport report =
        telegraph_decomposition_check(2.0, 1.0, 1.0, 40000, 17);
    CHECK(report.rows.size() == 6);
    CHECK(report.pass(3.5));
    CHECK(report.max_abs_diff < 0.05);
    CHECK_THROWS_AS(telegraph_decomposition_check(2.0, 1.0, 1.0, 100, 1),
                    InvalidArgumentError);
}

TEST_CASE("empirical mean position of the symmetric motion is zero") {
    rng::Stream stream(9, 0);
    MotionSpec orth = orthogonal_motion_spec(2.0, 1.0);
    double sx = 0.0, sy = 0.0, sx2 = 0.0, sy2 = 0.0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
        MotionPath p = simulate_path(orth, 1.0, stream);
        sx += p.end_position[0];
        sy += p.end_position[1];
        sx2 += p.end_position[0] * p.end_position[0];
        sy2 += p.end_position[1] * p.end_position[1];
    }
    double mx = sx / n, my = sy / n;
    double sex = std::sqrt((sx2 / n - mx * mx) / n);
    double sey = std::sqrt((sy2 / n - my * my) / n);
    CHECK(std::abs(mx) < 3.5 * sex);
    CHECK(std::abs(my) < 3.5 * sey);
}
