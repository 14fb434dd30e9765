#include "mlfrac/cauchy_solver.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "mlfrac/quadrature.hpp"

namespace mlfrac {

namespace {
constexpr double kTieTol = 1e-9;
}

int ceil_fuzzy(double x) {
    double r = std::round(x);
    if (std::abs(x - r) < kTieTol) return static_cast<int>(r);
    return static_cast<int>(std::ceil(x));
}

bool fuzzy_gt(double a, double b) { return a > b + kTieTol; }

Forcing Forcing::make_constant(Complex value) {
    Forcing f;
    f.kind = Kind::Constant;
    f.constant = value;
    return f;
}

Forcing Forcing::make_table(std::vector<double> t, std::vector<Complex> g) {
    if (t.size() != g.size() || t.size() < 2)
        throw InvalidArgumentError("Forcing table needs >= 2 matching nodes");
    if (!std::is_sorted(t.begin(), t.end()))
        throw InvalidArgumentError("Forcing table nodes must be sorted");
    Forcing f;
    f.kind = Kind::Table;
    f.times = std::move(t);
    f.values = std::move(g);
    return f;
}

Forcing Forcing::make_callable(std::function<Complex(double)> fn) {
    Forcing f;
    f.kind = Kind::Callable;
    f.fn = std::move(fn);
    return f;
}

Complex Forcing::eval(double t) const {
    switch (kind) {
        case Kind::Constant:
            return constant;
        case Kind::Callable:
            return fn(t);
        case Kind::Table: {
            if (t <= times.front()) return values.front();
            if (t >= times.back()) return values.back();
            auto it = std::upper_bound(times.begin(), times.end(), t);
            std::size_t i = static_cast<std::size_t>(it - times.begin());
            double w = (t - times[i - 1]) / (times[i] - times[i - 1]);
            return values[i - 1] * (1.0 - w) + values[i] * w;
        }
    }
    return {};
}

void Forcing::scale(Complex factor) {
    switch (kind) {
        case Kind::Constant:
            constant *= factor;
            break;
        case Kind::Table:
            for (Complex& v : values) v *= factor;
            break;
        case Kind::Callable: {
            auto base = fn;
            fn = [base, factor](double t) { return factor * base(t); };
            break;
        }
    }
}

CauchyProblem::CauchyProblem(double nu_, CharPolynomial poly_,
                             std::vector<Complex> init_conds_,
                             std::optional<Forcing> forcing_,
                             std::optional<RootSpectrum> spectrum_,
                             double cluster_radius)
    : nu(nu_),
      poly(poly_.monic()),
      init_conds(std::move(init_conds_)),
      forcing(std::move(forcing_)) {
    if (!(nu > 0.0)) throw InvalidArgumentError("CauchyProblem: nu must be > 0");
    Complex lead = poly_.coeffs.back();
    if (forcing) forcing->scale(1.0 / lead);

    if (spectrum_) {
        spectrum = std::move(*spectrum_);
        spectrum.validate();
        if (spectrum.degree() != poly.degree())
            throw InvalidArgumentError(
                "CauchyProblem: spectrum degree does not match polynomial");
        std::vector<Complex> rec = expand_from_roots(spectrum);
        double scale = 0.0, err = 0.0;
        for (std::size_t k = 0; k < rec.size(); ++k) {
            scale = std::max(scale, std::abs(poly.coeffs[k]));
            err = std::max(err, std::abs(rec[k] - poly.coeffs[k]));
        }
        if (!(err <= 1e-8 * scale))
            throw InvalidArgumentError(
                "CauchyProblem: supplied spectrum inconsistent with coefficients");
    } else {
        spectrum = find_roots(poly, cluster_radius);
    }

    int want = ceil_fuzzy(nu * poly.degree());
    if (static_cast<int>(init_conds.size()) != want)
        throw InvalidArgumentError(
            "CauchyProblem: expected " + std::to_string(want) +
            " initial conditions, got " + std::to_string(init_conds.size()));
}

int k_threshold(int l, double nu, int N) {
    if (l < 0 || !fuzzy_gt(nu * N, static_cast<double>(l)))
        throw InvalidArgumentError("k_threshold: l outside 0..ceil(nu N)-1");
    for (int k = 1; k <= N; ++k)
        if (fuzzy_gt(nu * k, static_cast<double>(l))) return k;
    throw InvalidArgumentError("k_threshold: unreachable");
}

namespace {

std::vector<Complex> gammas_from_mults(const RootSpectrum& spec) {
    std::vector<Complex> g;
    g.reserve(spec.mults.size());
    for (int m : spec.mults) g.emplace_back(static_cast<double>(m), 0.0);
    return g;
}

// E^{(m_1..m_M)}_{nu,delta}(eta_1 t^nu, ..., eta_M t^nu)
Complex ml_at(const RootSpectrum& spec, double nu, double delta, double tnu,
              const TruncationPolicy& policy) {
    std::vector<Complex> z(spec.roots.size());
    for (std::size_t j = 0; j < z.size(); ++j) z[j] = spec.roots[j] * tnu;
    MLParamsMultivariate params{nu, Complex(delta, 0.0),
                                gammas_from_mults(spec)};
    return ml_multivariate(params, z, policy);
}

Complex forcing_term(const SolutionExpansion& s, double t) {
    const Forcing& g = *s.forcing;
    const int N = s.spectrum.degree();
    const double nuN = s.nu * N;
    if (t == 0.0) return 0.0;
    if (g.kind == Forcing::Kind::Constant) {
        return g.constant * std::pow(t, nuN) *
               ml_at(s.spectrum, s.nu, nuN + 1.0, std::pow(t, s.nu), s.policy);
    }
    auto integrand = [&](double y) {
        return g.eval(t - y) * std::pow(y, nuN - 1.0) *
               ml_at(s.spectrum, s.nu, nuN, std::pow(y, s.nu), s.policy);
    };
    if (nuN >= 1.0) return integrate(integrand, 0.0, t, 1e-10);
    return integrate_power_endpoint(integrand, t, nuN - 1.0, 1e-10);
}

}  // namespace

Complex SolutionExpansion::evaluate(double t) const {
    if (!(t >= 0.0))
        throw InvalidArgumentError("evaluate: t >= 0 required");
    Complex total = 0.0;
    const double tnu = std::pow(t, nu);
    if (form == SolutionForm::General) {
        for (const GeneralTerm& term : general_terms) {
            double tp = std::pow(t, term.power);  // pow(0,0) = 1
            if (tp == 0.0) continue;
            total += term.weight * tp *
                     ml_at(spectrum, nu, term.power + 1.0, tnu, policy);
        }
    } else {
        for (const DistinctTerm& term : distinct_terms) {
            double tl = std::pow(t, static_cast<double>(term.l));
            if (tl == 0.0) continue;
            total += term.coefficient * tl *
                     ml2({nu, Complex(term.l + 1.0, 0.0)}, term.eta * tnu,
                         policy);
        }
    }
    if (forcing) total += forcing_term(*this, t);
    return total;
}

void SolutionExpansion::write_term_csv(std::ostream& os) const {
    if (form == SolutionForm::General) {
        os << "l,k,weight_re,weight_im,power,delta\n";
        for (const GeneralTerm& t : general_terms)
            os << t.l << ',' << t.k << ',' << t.weight.real() << ','
               << t.weight.imag() << ',' << t.power << ',' << t.power + 1.0
               << '\n';
    } else {
        os << "h,l,eta_re,eta_im,coeff_re,coeff_im\n";
        for (const DistinctTerm& t : distinct_terms)
            os << t.h << ',' << t.l << ',' << t.eta.real() << ','
               << t.eta.imag() << ',' << t.coefficient.real() << ','
               << t.coefficient.imag() << '\n';
    }
}

SolutionExpansion solve_general(const CauchyProblem& p,
                                const TruncationPolicy& policy) {
    if (p.forcing)
        throw InvalidArgumentError(
            "solve_general: forcing present, use solve_nonhomogeneous");
    SolutionExpansion s;
    s.form = SolutionForm::General;
    s.nu = p.nu;
    s.spectrum = p.spectrum;
    s.policy = policy;
    const int N = p.order();
    const int L = p.num_conditions();
    for (int l = 0; l < L; ++l) {
        for (int k = k_threshold(l, p.nu, N); k <= N; ++k) {
            GeneralTerm term;
            term.l = l;
            term.k = k;
            term.weight = p.init_conds[l] * p.poly.coeffs[k];
            term.power = p.nu * (N - k) + l;
            s.general_terms.push_back(term);
        }
    }
    return s;
}

SolutionExpansion solve_distinct(const CauchyProblem& p,
                                 const TruncationPolicy& policy) {
    if (p.forcing)
        throw InvalidArgumentError(
            "solve_distinct: forcing present, use solve_nonhomogeneous");
    if (!p.spectrum.all_simple())
        throw MultiplicityError("solve_distinct: repeated roots; use solve_general");
    SolutionExpansion s;
    s.form = SolutionForm::Distinct;
    s.nu = p.nu;
    s.spectrum = p.spectrum;
    s.policy = policy;
    const int N = p.order();
    const int L = p.num_conditions();
    const auto w = residue_weights(p.spectrum);
    for (int h = 0; h < N; ++h) {
        for (int l = 0; l < L; ++l) {
            Complex c = 0.0;
            for (int k = k_threshold(l, p.nu, N); k <= N; ++k)
                c += p.poly.coeffs[k] * w[h][k - 1];
            DistinctTerm term;
            term.h = h;
            term.l = l;
            term.eta = p.spectrum.roots[h];
            term.coefficient = p.init_conds[l] * c;
            s.distinct_terms.push_back(term);
        }
    }
    return s;
}

SolutionExpansion solve_nonhomogeneous(const CauchyProblem& p,
                                       const TruncationPolicy& policy) {
    if (!p.forcing)
        throw InvalidArgumentError("solve_nonhomogeneous: no forcing declared");
    CauchyProblem hom = p;
    hom.forcing.reset();
    SolutionExpansion s = solve_general(hom, policy);
    s.forcing = p.forcing;
    return s;
}

Complex evaluate_solution(const SolutionExpansion& s, double t) {
    return s.evaluate(t);
}

}  // namespace mlfrac
