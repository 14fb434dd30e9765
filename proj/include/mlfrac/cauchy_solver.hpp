#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "mlfrac/char_poly.hpp"
#include "mlfrac/special_functions.hpp"

namespace mlfrac {

// ceil with protection against 1-ulp drift in nu*N products.
int ceil_fuzzy(double x);
// strict a > b with the same protection (near-ties count as equal).
bool fuzzy_gt(double a, double b);

// Right-hand side g(t) of the non-homogeneous equation, with a declared
// evaluation method so outputs and the Laplace oracle can handle it.
struct Forcing {
    enum class Kind { Constant, Table, Callable };
    Kind kind = Kind::Constant;
    Complex constant{};
    std::vector<double> times;    // Table: sorted nodes, linear interpolation
    std::vector<Complex> values;  // Table: same length as times
    std::function<Complex(double)> fn;  // Callable

    static Forcing make_constant(Complex value);
    static Forcing make_table(std::vector<double> t, std::vector<Complex> g);
    static Forcing make_callable(std::function<Complex(double)> f);

    Complex eval(double t) const;
    void scale(Complex factor);
};

// Fractional Cauchy problem sum_k lambda_k D^{nu k} F = g with initial data
// f_0..f_{ceil(nu N)-1} at a fixed transform point. Stored with a monic
// characteristic polynomial (the expansion formulas assume lambda_N = 1);
// the forcing is rescaled accordingly, the solution is unchanged.
struct CauchyProblem {
    double nu;
    CharPolynomial poly;
    RootSpectrum spectrum;
    std::vector<Complex> init_conds;
    std::optional<Forcing> forcing;

    CauchyProblem(double nu_, CharPolynomial poly_,
                  std::vector<Complex> init_conds_,
                  std::optional<Forcing> forcing_ = std::nullopt,
                  std::optional<RootSpectrum> spectrum_ = std::nullopt,
                  double cluster_radius = 1e-7);

    int order() const { return poly.degree(); }
    int num_conditions() const { return ceil_fuzzy(nu * order()); }
};

// Smallest k in 1..N with nu k > l.
int k_threshold(int l, double nu, int N);

enum class SolutionForm { General, Distinct };

// One term f_l lambda_k t^{nu(N-k)+l} E^{(m)}_{nu,nu(N-k)+l+1}(eta t^nu).
struct GeneralTerm {
    int l;
    int k;
    Complex weight;  // f_l * lambda_k
    double power;    // nu (N - k) + l
};

// One term coeff t^l E_{nu,l+1}(eta_h t^nu); coeff folds f_l and the
// residue-weight sum.
struct DistinctTerm {
    int h;
    int l;
    Complex eta;
    Complex coefficient;
};

// Closed-form solution as a structured sum of Mittag-Leffler terms,
// immutable after construction and evaluable at any t >= 0.
struct SolutionExpansion {
    SolutionForm form = SolutionForm::General;
    double nu = 0.0;
    RootSpectrum spectrum;
    std::vector<GeneralTerm> general_terms;
    std::vector<DistinctTerm> distinct_terms;
    std::optional<Forcing> forcing;
    TruncationPolicy policy;

    Complex evaluate(double t) const;
    void write_term_csv(std::ostream& os) const;
};

// Theorem-of-general-multiplicity expansion; requires no forcing.
SolutionExpansion solve_general(const CauchyProblem& p,
                                const TruncationPolicy& policy = {});

// Distinct-root expansion through residue weights; requires simple roots.
SolutionExpansion solve_distinct(const CauchyProblem& p,
                                 const TruncationPolicy& policy = {});

// General expansion plus the forcing convolution term; when g is constant
// the convolution collapses to g t^{nu N} E^{(m)}_{nu, nu N + 1}(eta t^nu).
SolutionExpansion solve_nonhomogeneous(const CauchyProblem& p,
                                       const TruncationPolicy& policy = {});

Complex evaluate_solution(const SolutionExpansion& s, double t);

}  // namespace mlfrac
