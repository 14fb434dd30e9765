// Python bindings for the core operations: Mittag-Leffler evaluation,
// characteristic-polynomial roots, Cauchy-problem solving, Laplace/Caputo
// oracles, G-variable subordination and finite-velocity motions.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mlfrac/laplace_oracle.hpp"
#include "mlfrac/problem_io.hpp"
#include "mlfrac/random_motion.hpp"
#include "mlfrac/subordination.hpp"

namespace py = pybind11;
using namespace mlfrac;
using C = std::complex<double>;

#ifndef MLFRAC_VERSION
#define MLFRAC_VERSION "dev"
#endif

namespace {

TruncationPolicy make_policy(double abs_tol, double rel_tol, int max_terms) {
    TruncationPolicy p;
    p.abs_tol = abs_tol;
    p.rel_tol = rel_tol;
    p.max_terms = max_terms;
    return p;
}

CauchyProblem make_problem(double nu, const std::vector<C>& lambda,
                           const std::vector<C>& init_conds,
                           std::optional<std::vector<C>> roots,
                           std::optional<std::vector<int>> mults,
                           std::optional<C> forcing_constant) {
    std::optional<RootSpectrum> spectrum;
    if (roots) {
        RootSpectrum spec;
        spec.roots = *roots;
        spec.mults = mults ? *mults : std::vector<int>(roots->size(), 1);
        spectrum = std::move(spec);
    }
    std::optional<Forcing> forcing;
    if (forcing_constant) forcing = Forcing::make_constant(*forcing_constant);
    return CauchyProblem(nu, CharPolynomial(lambda), init_conds,
                         std::move(forcing), std::move(spectrum));
}

}  // namespace

PYBIND11_MODULE(_mlfrac, m) {
    m.doc() = "Mittag-Leffler solutions of fractional Cauchy problems";
    m.attr("__version__") = MLFRAC_VERSION;

    py::register_exception<InvalidArgumentError>(m, "InvalidArgument",
                                                 PyExc_ValueError);
    py::register_exception<NonConvergenceError>(m, "NonConvergence",
                                                PyExc_ArithmeticError);
    py::register_exception<ZeroRootError>(m, "ZeroRoot", PyExc_ValueError);
    py::register_exception<MultiplicityError>(m, "MultiplicityErr",
                                              PyExc_ValueError);

    // ---- special functions
    m.def("log_gamma", &log_gamma, py::arg("z"));
    m.def("recip_gamma", &recip_gamma, py::arg("z"));
    m.def(
        "ml2",
        [](double nu, C delta, C z, double abs_tol, double rel_tol,
           int max_terms) {
            return ml2({nu, delta}, z, make_policy(abs_tol, rel_tol, max_terms));
        },
        py::arg("nu"), py::arg("delta"), py::arg("z"),
        py::arg("abs_tol") = 1e-14, py::arg("rel_tol") = 1e-12,
        py::arg("max_terms") = 2000,
        "Two-parameter Mittag-Leffler E_{nu,delta}(z)");
    m.def(
        "ml_prabhakar",
        [](double nu, C delta, C gamma, C z, double abs_tol, double rel_tol,
           int max_terms) {
            return ml_prabhakar({nu, delta, gamma}, z,
                                make_policy(abs_tol, rel_tol, max_terms));
        },
        py::arg("nu"), py::arg("delta"), py::arg("gamma"), py::arg("z"),
        py::arg("abs_tol") = 1e-14, py::arg("rel_tol") = 1e-12,
        py::arg("max_terms") = 2000);
    m.def(
        "ml_multivariate",
        [](double nu, C delta, const std::vector<C>& gammas,
           const std::vector<C>& z, double abs_tol, double rel_tol,
           int max_terms) {
            MLParamsMultivariate params{nu, delta, gammas};
            return ml_multivariate(params, z,
                                   make_policy(abs_tol, rel_tol, max_terms));
        },
        py::arg("nu"), py::arg("delta"), py::arg("gammas"), py::arg("z"),
        py::arg("abs_tol") = 1e-14, py::arg("rel_tol") = 1e-12,
        py::arg("max_terms") = 2000);
    m.def("ml_shift_identity", [](double nu, C l, int n, C z) {
        return ml_shift_identity(nu, l, n, z);
    });

    // ---- characteristic polynomial
    m.def(
        "find_roots",
        [](const std::vector<C>& coeffs, double cluster_radius) {
            RootSpectrum spec =
                find_roots(CharPolynomial(coeffs), cluster_radius);
            return std::make_pair(spec.roots, spec.mults);
        },
        py::arg("coeffs"), py::arg("cluster_radius") = 1e-7,
        "Roots with multiplicities of sum_k coeffs[k] x^k");
    m.def("residue_weights", [](const std::vector<C>& roots) {
        RootSpectrum spec{roots, std::vector<int>(roots.size(), 1)};
        return residue_weights(spec);
    });
    m.def("k_threshold", &k_threshold, py::arg("l"), py::arg("nu"),
          py::arg("N"));

    // ---- Cauchy problems and solutions
    py::class_<SolutionExpansion>(m, "Solution")
        .def("__call__", &SolutionExpansion::evaluate, py::arg("t"))
        .def("evaluate", &SolutionExpansion::evaluate, py::arg("t"))
        .def_property_readonly(
            "form",
            [](const SolutionExpansion& s) {
                return s.form == SolutionForm::General ? "general" : "distinct";
            })
        .def("term_csv", [](const SolutionExpansion& s) {
            std::ostringstream os;
            s.write_term_csv(os);
            return os.str();
        });

    py::class_<CauchyProblem>(m, "CauchyProblem")
        .def(py::init(&make_problem), py::arg("nu"), py::arg("lam"),
             py::arg("init_conds"), py::arg("roots") = std::nullopt,
             py::arg("mults") = std::nullopt,
             py::arg("forcing_constant") = std::nullopt)
        .def_readonly("nu", &CauchyProblem::nu)
        .def_property_readonly(
            "lam", [](const CauchyProblem& p) { return p.poly.coeffs; })
        .def_property_readonly(
            "roots", [](const CauchyProblem& p) { return p.spectrum.roots; })
        .def_property_readonly(
            "mults", [](const CauchyProblem& p) { return p.spectrum.mults; })
        .def_readonly("init_conds", &CauchyProblem::init_conds)
        .def(
            "solve",
            [](const CauchyProblem& p, const std::string& form) {
                if (p.forcing) return solve_nonhomogeneous(p);
                if (form == "general") return solve_general(p);
                if (form == "distinct") return solve_distinct(p);
                return p.spectrum.all_simple() ? solve_distinct(p)
                                               : solve_general(p);
            },
            py::arg("form") = "auto")
        .def("laplace", &laplace_transform_solution, py::arg("mu"));

    // ---- oracles
    m.def(
        "invert_laplace",
        [](const std::function<C(C)>& f, double t, int nodes, double tol) {
            return invert_laplace(f, t, nodes, tol);
        },
        py::arg("f"), py::arg("t"), py::arg("nodes") = 48,
        py::arg("tol") = 1e-8);
    m.def(
        "caputo_derivative",
        [](const std::function<C(double)>& f, double nu, double t, double h,
           const std::vector<C>& init_derivs) {
            return caputo_derivative_numeric(f, nu, t, h, init_derivs);
        },
        py::arg("f"), py::arg("nu"), py::arg("t"), py::arg("h"),
        py::arg("init_derivs"));
    m.def(
        "convolve",
        [](const std::function<C(double)>& f, const std::function<C(double)>& g,
           double t, double f_exponent, double g_exponent, double tol) {
            return convolve_numeric(f, g, t, f_exponent, g_exponent, tol);
        },
        py::arg("f"), py::arg("g"), py::arg("t"), py::arg("f_exponent") = 0.0,
        py::arg("g_exponent") = 0.0, py::arg("tol") = 1e-10);

    // ---- subordination
    m.def("g_density", [](int n, int j, double t, double y) {
        return g_density({n, j, t}, y);
    });
    m.def("mellin_g", [](int n, int j, double t, double s) {
        return mellin_g({n, j, t}, s);
    });
    m.def(
        "sample_g",
        [](int n, int j, double t, std::uint64_t count, std::uint64_t seed) {
            rng::Stream stream(seed, 0);
            std::vector<double> out(count);
            for (auto& y : out) y = sample_g({n, j, t}, stream);
            return out;
        },
        py::arg("n"), py::arg("j"), py::arg("t"), py::arg("count"),
        py::arg("seed") = 12345);
    m.def(
        "subordinate_mc",
        [](const CauchyProblem& target, int n, double t, std::uint64_t samples,
           std::uint64_t seed) {
            SubordinationPlan plan = build_associated_problem(target, n);
            McEstimate est = subordinate_mc(plan, t, samples, seed);
            return std::make_tuple(est.value, est.std_error(),
                                   plan.target_expansion.evaluate(t));
        },
        py::arg("target"), py::arg("n"), py::arg("t"), py::arg("samples"),
        py::arg("seed") = 12345,
        "Returns (mc_estimate, std_error, direct_solve)");
    m.def(
        "subordinate_quadrature",
        [](const CauchyProblem& target, double t, double tol) {
            SubordinationPlan plan = build_associated_problem(target, 2);
            return subordinate_quadrature_n2(plan, t, tol);
        },
        py::arg("target"), py::arg("t"), py::arg("tol") = 1e-8);
    m.def(
        "iterated_brownian_mc",
        [](const CauchyProblem& target, int k, double t, std::uint64_t samples,
           std::uint64_t seed) {
            SubordinationPlan plan = build_associated_problem(target, 1 << k);
            McEstimate est = iterated_brownian_mc(plan, k, t, samples, seed);
            return std::make_tuple(est.value, est.std_error(),
                                   plan.target_expansion.evaluate(t));
        },
        py::arg("target"), py::arg("k"), py::arg("t"), py::arg("samples"),
        py::arg("seed") = 12345);

    // ---- random motions
    py::class_<MotionSpec>(m, "MotionSpec")
        .def(py::init([](std::vector<std::vector<double>> velocities,
                         double rate, std::vector<double> initial_dist,
                         std::vector<std::vector<double>> switch_matrix) {
                 MotionSpec spec{std::move(velocities), rate,
                                 std::move(initial_dist),
                                 std::move(switch_matrix)};
                 spec.validate();
                 return spec;
             }),
             py::arg("velocities"), py::arg("rate"), py::arg("initial_dist"),
             py::arg("switch_matrix"))
        .def_readonly("velocities", &MotionSpec::velocities)
        .def_readonly("rate", &MotionSpec::rate);
    m.def("orthogonal_motion", &orthogonal_motion_spec, py::arg("lam"),
          py::arg("c"));
    m.def("three_direction_motion", &three_direction_motion_spec,
          py::arg("lam"), py::arg("c"));
    m.def("telegraph_motion", &telegraph_motion_spec, py::arg("lam"),
          py::arg("c"));
    m.def(
        "simulate_path",
        [](const MotionSpec& spec, double t, std::uint64_t seed) {
            rng::Stream stream(seed, 0);
            MotionPath p = simulate_path(spec, t, stream);
            return std::make_tuple(p.switch_times, p.velocity_indices,
                                   p.end_position);
        },
        py::arg("spec"), py::arg("t"), py::arg("seed") = 12345,
        "Returns (switch_times, velocity_indices, end_position)");
    m.def(
        "empirical_cf",
        [](const MotionSpec& spec, double t, std::vector<double> alpha,
           std::uint64_t samples, std::uint64_t seed) {
            McEstimate est = empirical_cf(spec, t, alpha, samples, seed);
            return std::make_pair(est.value, est.std_error());
        },
        py::arg("spec"), py::arg("t"), py::arg("alpha"), py::arg("samples"),
        py::arg("seed") = 12345);
    m.def(
        "cf_initial_derivative",
        [](const MotionSpec& spec, std::vector<double> alpha, int n) {
            return cf_initial_derivative(spec, alpha, n);
        },
        py::arg("spec"), py::arg("alpha"), py::arg("n"));
    m.def("orthogonal_problem", &orthogonal_problem, py::arg("lam"),
          py::arg("c"), py::arg("alpha"), py::arg("beta"), py::arg("nu"));
    m.def("orthogonal_cf_nu1", &orthogonal_cf_nu1, py::arg("lam"), py::arg("c"),
          py::arg("alpha"), py::arg("beta"), py::arg("t"));
    m.def("three_direction_problem", &three_direction_problem, py::arg("lam"),
          py::arg("c"), py::arg("alpha"), py::arg("beta"), py::arg("nu"));
}
