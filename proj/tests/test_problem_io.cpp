#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <nlohmann/json.hpp>

#include "doctest.h"
#include "mlfrac/problem_io.hpp"

using namespace mlfrac;
using nlohmann::json;
using C = std::complex<double>;

TEST_CASE("problem JSON round trip") {
    json j = {{"nu", 0.5},
              {"lambda", {{0.9, 0.0}, {2.2, 0.0}, {1.0, 0.0}}},
              {"init_conds", {{1.0, 0.5}}}};
    CauchyProblem p = problem_from_json(j);
    CHECK(p.nu == 0.5);
    CHECK(p.order() == 2);
    CHECK(p.init_conds[0] == C(1.0, 0.5));
    CHECK(p.spectrum.all_simple());

    json back = problem_to_json(p);
    CauchyProblem q = problem_from_json(back);
    CHECK(q.poly.coeffs == p.poly.coeffs);
    CHECK(q.init_conds == p.init_conds);
    CHECK(q.spectrum.roots == p.spectrum.roots);
}

TEST_CASE("plain numbers are accepted as real complex values") {
    json j = {{"nu", 1.0},
              {"lambda", {-1.0, 0.0, 1.0}},
              {"init_conds", {1.0, 0.0}}};
    CauchyProblem p = problem_from_json(j);
    CHECK(p.poly.coeffs[0] == C(-1.0, 0.0));
    SolutionExpansion s = solve_distinct(p);
    CHECK(std::abs(s.evaluate(1.0) - C(std::cosh(1.0), 0.0)) < 1e-11);
}

TEST_CASE("explicit roots bypass the root finder") {
    json j = {{"nu", 1.0},
              {"lambda", {1.0, 2.0, 1.0}},
              {"roots", {{-1.0, 0.0}}},
              {"mults", {2}},
              {"init_conds", {1.0, 0.0}}};
    CauchyProblem p = problem_from_json(j);
    REQUIRE(p.spectrum.roots.size() == 1);
    CHECK(p.spectrum.mults[0] == 2);
}

TEST_CASE("forcing variants") {
    json jc = {{"nu", 1.0},
               {"lambda", {1.0, 1.0}},
               {"init_conds", {0.0}},
               {"forcing", {{"kind", "constant"}, {"value", 1.0}}}};
    CauchyProblem pc = problem_from_json(jc);
    REQUIRE(pc.forcing.has_value());
    SolutionExpansion s = solve_nonhomogeneous(pc);
    CHECK(std::abs(s.evaluate(1.0) - C(1.0 - std::exp(-1.0), 0.0)) < 1e-10);

    json jt = jc;
    jt["forcing"] = {{"kind", "table"},
                     {"times", {0.0, 5.0}},
                     {"values", {1.0, 1.0}}};
    CauchyProblem pt = problem_from_json(jt);
    SolutionExpansion st = solve_nonhomogeneous(pt);
    CHECK(std::abs(st.evaluate(1.0) - s.evaluate(1.0)) < 1e-8);
}

TEST_CASE("schema violations") {
    CHECK_THROWS_AS(problem_from_json(json::array()), InvalidArgumentError);
    CHECK_THROWS_AS(problem_from_json(json{{"nu", 1.0}}), InvalidArgumentError);
    json bad = {{"nu", 1.0},
                {"lambda", {{1.0, 0.0, 3.0}}},
                {"init_conds", {1.0}}};
    CHECK_THROWS_AS(problem_from_json(bad), InvalidArgumentError);
    json badf = {{"nu", 1.0},
                 {"lambda", {1.0, 1.0}},
                 {"init_conds", {0.0}},
                 {"forcing", {{"kind", "mystery"}}}};
    CHECK_THROWS_AS(problem_from_json(badf), InvalidArgumentError);
    CHECK_THROWS_AS(load_problem_file("/nonexistent/path.json"),
                    InvalidArgumentError);
}

TEST_CASE("motion spec ingestion") {
    json j = {{"velocities", {{1.0, 0.0}, {-1.0, 0.0}}},
              {"rate", 2.0},
              {"initial_dist", {0.5, 0.5}},
              {"switch_matrix", {{0.0, 1.0}, {1.0, 0.0}}}};
    MotionSpec spec = motion_from_json(j);
    CHECK(spec.dimension() == 2);
    CHECK(spec.rate == 2.0);
    json bad = j;
    bad["initial_dist"] = {0.9, 0.9};
    CHECK_THROWS_AS(motion_from_json(bad), InvalidArgumentError);
    json missing = j;
    missing.erase("rate");
    CHECK_THROWS_AS(motion_from_json(missing), InvalidArgumentError);
}
