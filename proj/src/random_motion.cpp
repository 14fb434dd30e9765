#include "mlfrac/random_motion.hpp"

#include <algorithm>
#include <cmath>

namespace mlfrac {

namespace {

Complex ipow(Complex z, int n) {
    Complex r = 1.0;
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

double dot(std::span<const double> a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

int MotionSpec::dimension() const {
    return velocities.empty() ? 0 : static_cast<int>(velocities.front().size());
}

void MotionSpec::validate() const {
    if (velocities.empty())
        throw InvalidArgumentError("MotionSpec: at least one velocity");
    const std::size_t d = velocities.front().size();
    if (d == 0) throw InvalidArgumentError("MotionSpec: zero-dimensional velocity");
    for (const auto& v : velocities)
        if (v.size() != d)
            throw InvalidArgumentError("MotionSpec: velocity dimension mismatch");
    if (!(rate > 0.0)) throw InvalidArgumentError("MotionSpec: rate > 0 required");
    const std::size_t m = velocities.size();
    if (initial_dist.size() != m || switch_matrix.size() != m)
        throw InvalidArgumentError("MotionSpec: distribution size mismatch");
    double sum = 0.0;
    for (double p : initial_dist) {
        if (p < 0.0 || p > 1.0)
            throw InvalidArgumentError("MotionSpec: probability outside [0,1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw InvalidArgumentError("MotionSpec: initial_dist must sum to 1");
    for (const auto& row : switch_matrix) {
        if (row.size() != m)
            throw InvalidArgumentError("MotionSpec: switch_matrix not square");
        double rs = 0.0;
        for (double p : row) {
            if (p < 0.0 || p > 1.0)
                throw InvalidArgumentError("MotionSpec: probability outside [0,1]");
            rs += p;
        }
        if (std::abs(rs - 1.0) > 1e-9)
            throw InvalidArgumentError("MotionSpec: switch_matrix row must sum to 1");
    }
}

MotionPath simulate_path(const MotionSpec& spec, double t, rng::Stream& stream) {
    if (!(t >= 0.0)) throw InvalidArgumentError("simulate_path: t >= 0");
    const int d = spec.dimension();
    MotionPath path;
    path.end_position.assign(d, 0.0);
    int cur = stream.categorical(spec.initial_dist.data(),
                                 static_cast<int>(spec.initial_dist.size()));
    path.velocity_indices.push_back(cur);
    double now = 0.0;
    for (;;) {
        double next = now + stream.exponential(spec.rate);
        double hold = std::min(next, t) - now;
        for (int i = 0; i < d; ++i)
            path.end_position[i] += spec.velocities[cur][i] * hold;
        if (next >= t) break;
        now = next;
        path.switch_times.push_back(now);
        cur = stream.categorical(spec.switch_matrix[cur].data(),
                                 static_cast<int>(spec.switch_matrix[cur].size()));
        path.velocity_indices.push_back(cur);
    }
    return path;
}

std::vector<std::vector<double>> simulate_positions_at(
    const MotionSpec& spec, std::span<const double> times,
    rng::Stream& stream) {
    if (times.empty()) return {};
    if (!std::is_sorted(times.begin(), times.end()))
        throw InvalidArgumentError("simulate_positions_at: times must be sorted");
    if (times.front() < 0.0)
        throw InvalidArgumentError("simulate_positions_at: negative time");
    const int d = spec.dimension();
    std::vector<std::vector<double>> out(times.size());
    std::vector<double> pos(d, 0.0);
    int cur = stream.categorical(spec.initial_dist.data(),
                                 static_cast<int>(spec.initial_dist.size()));
    double now = 0.0;
    std::size_t next_out = 0;
    while (next_out < times.size()) {
        double next = now + stream.exponential(spec.rate);
        while (next_out < times.size() && times[next_out] <= next) {
            std::vector<double> p = pos;
            for (int i = 0; i < d; ++i)
                p[i] += spec.velocities[cur][i] * (times[next_out] - now);
            out[next_out++] = std::move(p);
        }
        for (int i = 0; i < d; ++i)
            pos[i] += spec.velocities[cur][i] * (next - now);
        now = next;
        cur = stream.categorical(spec.switch_matrix[cur].data(),
                                 static_cast<int>(spec.switch_matrix[cur].size()));
    }
    return out;
}

McEstimate empirical_cf(const MotionSpec& spec, double t,
                        std::span<const double> alpha, std::uint64_t samples,
                        std::uint64_t seed) {
    spec.validate();
    if (alpha.size() != static_cast<std::size_t>(spec.dimension()))
        throw InvalidArgumentError("empirical_cf: alpha dimension mismatch");
    return detail::run_mc(samples, seed, [&](rng::Stream& stream) {
        MotionPath p = simulate_path(spec, t, stream);
        double phase = dot(alpha, p.end_position);
        return Complex(std::cos(phase), std::sin(phase));
    });
}

McEstimate empirical_cf_derivative(const MotionSpec& spec,
                                   std::span<const double> alpha, int order,
                                   double step, std::uint64_t samples,
                                   std::uint64_t seed) {
    spec.validate();
    if (order < 1 || order > 8)
        throw InvalidArgumentError("empirical_cf_derivative: order in 1..8");
    if (!(step > 0.0))
        throw InvalidArgumentError("empirical_cf_derivative: step > 0");
    std::vector<double> times(order);
    for (int j = 1; j <= order; ++j) times[j - 1] = j * step;
    std::vector<double> binom(order + 1, 1.0);
    for (int j = 1; j <= order; ++j)
        binom[j] = binom[j - 1] * (order - j + 1) / j;
    const double hn = std::pow(step, order);
    return detail::run_mc(samples, seed, [&](rng::Stream& stream) {
        auto pos = simulate_positions_at(spec, times, stream);
        Complex acc = (order % 2 == 0) ? Complex(1.0, 0.0) : Complex(-1.0, 0.0);
        for (int j = 1; j <= order; ++j) {
            double phase = dot(alpha, pos[j - 1]);
            double sign = ((order - j) % 2 == 0) ? 1.0 : -1.0;
            acc += sign * binom[j] * Complex(std::cos(phase), std::sin(phase));
        }
        return acc / hn;
    });
}

Complex cf_initial_derivative(const MotionSpec& spec,
                              std::span<const double> alpha, int n) {
    spec.validate();
    if (n < 0) throw InvalidArgumentError("cf_initial_derivative: n >= 0");
    if (n == 0) return {1.0, 0.0};
    const Complex I(0.0, 1.0);
    const std::size_t m = spec.velocities.size();
    std::vector<double> a(m);
    for (std::size_t k = 0; k < m; ++k) a[k] = dot(alpha, spec.velocities[k]);

    Complex total = 0.0;
    for (std::size_t k = 0; k < m; ++k)
        total += spec.initial_dist[k] *
                 (Complex(-n * spec.rate, 0.0) + I * a[k]) * ipow(I * a[k], n - 1);

    // I_{n-1}(a_h, a_k) = integral_0^1 (i (a_h d + a_k (1-d)))^{n-1} dd, exact
    // polynomial antiderivative with an |a_h - a_k| -> 0 branch.
    const int mm = n - 1;
    for (std::size_t h = 0; h < m; ++h) {
        for (std::size_t k = 0; k < m; ++k) {
            double scale = std::max({1.0, std::abs(a[h]), std::abs(a[k])});
            Complex seg;
            if (std::abs(a[h] - a[k]) > 1e-12 * scale) {
                seg = ipow(I, mm) *
                      (std::pow(a[h], mm + 1) - std::pow(a[k], mm + 1)) /
                      ((mm + 1.0) * (a[h] - a[k]));
            } else {
                seg = ipow(I * a[h], mm);
            }
            total += n * spec.rate * spec.initial_dist[h] *
                     spec.switch_matrix[h][k] * seg;
        }
    }
    return total;
}

MotionSpec orthogonal_motion_spec(double lambda, double c) {
    MotionSpec spec;
    spec.velocities = {{c, 0.0}, {0.0, c}, {-c, 0.0}, {0.0, -c}};
    spec.rate = lambda;
    spec.initial_dist.assign(4, 0.25);
    spec.switch_matrix.assign(4, std::vector<double>(4, 0.0));
    for (int k = 0; k < 4; ++k) {
        spec.switch_matrix[k][(k + 1) % 4] = 0.5;
        spec.switch_matrix[k][(k + 3) % 4] = 0.5;
    }
    return spec;
}

MotionSpec three_direction_motion_spec(double lambda, double c) {
    const double r3 = std::sqrt(3.0);
    MotionSpec spec;
    spec.velocities = {{c, 0.0}, {-c / 2, r3 * c / 2}, {-c / 2, -r3 * c / 2}};
    spec.rate = lambda;
    spec.initial_dist.assign(3, 1.0 / 3.0);
    spec.switch_matrix.assign(3, std::vector<double>(3, 1.0 / 3.0));
    return spec;
}

MotionSpec telegraph_motion_spec(double lambda, double c) {
    MotionSpec spec;
    spec.velocities = {{c}, {-c}};
    spec.rate = lambda;
    spec.initial_dist = {0.5, 0.5};
    spec.switch_matrix = {{0.0, 1.0}, {1.0, 0.0}};
    return spec;
}

CauchyProblem orthogonal_problem(double lambda, double c, double alpha,
                                 double beta, double nu) {
    if (!(lambda > 0.0) || !(c > 0.0))
        throw InvalidArgumentError("orthogonal_problem: lambda, c > 0");
    if (!(nu > 0.0) || nu > 1.0)
        throw InvalidArgumentError(
            "orthogonal_problem: conditions known for 0 < nu <= 1 only");
    const double s = alpha * alpha + beta * beta;
    if (s == 0.0)
        throw ZeroRootError("orthogonal_problem: alpha = beta = 0 gives a zero root");
    std::vector<Complex> coeffs{
        Complex(c * c * (lambda * lambda * s + c * c * alpha * alpha * beta * beta), 0.0),
        Complex(2.0 * lambda * (lambda * lambda + c * c * s), 0.0),
        Complex(5.0 * lambda * lambda + c * c * s, 0.0),
        Complex(4.0 * lambda, 0.0),
        Complex(1.0, 0.0)};
    std::vector<Complex> conds{Complex(1.0, 0.0), Complex(0.0, 0.0),
                               Complex(-c * c * s / 2.0, 0.0),
                               Complex(lambda * c * c * s / 2.0, 0.0)};
    conds.resize(ceil_fuzzy(4.0 * nu));
    return CauchyProblem(nu, CharPolynomial(coeffs), std::move(conds));
}

std::array<Complex, 4> orthogonal_roots_closed_form(double lambda, double c,
                                                    double alpha, double beta) {
    Complex A = std::sqrt(Complex(lambda * lambda - c * c * (alpha - beta) * (alpha - beta), 0.0));
    Complex B = std::sqrt(Complex(lambda * lambda - c * c * (alpha + beta) * (alpha + beta), 0.0));
    return {-lambda - (A + B) / 2.0, -lambda + (A - B) / 2.0,
            -lambda - (A - B) / 2.0, -lambda + (A + B) / 2.0};
}

Complex orthogonal_cf_nu1(double lambda, double c, double alpha, double beta,
                          double t) {
    if (alpha == 0.0 && beta == 0.0)
        throw InvalidArgumentError("orthogonal_cf_nu1: (alpha,beta) != 0");
    Complex A = std::sqrt(Complex(lambda * lambda - c * c * (alpha - beta) * (alpha - beta), 0.0));
    Complex B = std::sqrt(Complex(lambda * lambda - c * c * (alpha + beta) * (alpha + beta), 0.0));
    if (std::abs(A) < 1e-12 * lambda || std::abs(B) < 1e-12 * lambda)
        throw PoleError("orthogonal_cf_nu1: resonant parameters (A or B = 0)");
    const Complex la = lambda / A, lb = lambda / B;
    const std::array<Complex, 4> eta = orthogonal_roots_closed_form(lambda, c, alpha, beta);
    const std::array<Complex, 4> coeff{(1.0 - la) * (1.0 - lb),
                                       (1.0 + la) * (1.0 - lb),
                                       (1.0 - la) * (1.0 + lb),
                                       (1.0 + la) * (1.0 + lb)};
    Complex f = 0.0;
    for (int i = 0; i < 4; ++i)
        f += coeff[i] * ml2({1.0, Complex(1.0, 0.0)}, eta[i] * t);
    return f / 4.0;
}

CauchyProblem three_direction_problem(double lambda, double c, double alpha,
                                      double beta, double nu) {
    if (!(lambda > 0.0) || !(c > 0.0))
        throw InvalidArgumentError("three_direction_problem: lambda, c > 0");
    if (!(nu > 0.0) || nu > 1.0)
        throw InvalidArgumentError(
            "three_direction_problem: conditions known for 0 < nu <= 1 only");
    const double s = alpha * alpha + beta * beta;
    const double c3 = c * c * c;
    Complex lam0(9.0 * lambda * c * c * s / 8.0,
                 3.0 * c3 * alpha * beta * beta / 4.0 - c3 * alpha * alpha * alpha / 4.0);
    if (std::abs(lam0) == 0.0)
        throw ZeroRootError("three_direction_problem: lambda_0 = 0 gives a zero root");
    std::vector<Complex> coeffs{
        lam0,
        Complex(std::pow(1.5, 4) * lambda * lambda + 3.0 * c * c * s / 4.0, 0.0),
        Complex(4.5 * lambda, 0.0), Complex(1.0, 0.0)};
    std::vector<Complex> conds{Complex(1.0, 0.0), Complex(0.0, 0.0),
                               Complex(-c * c * s / 2.0, 0.0)};
    conds.resize(ceil_fuzzy(3.0 * nu));
    return CauchyProblem(nu, CharPolynomial(coeffs), std::move(conds));
}

TelegraphDecompositionReport telegraph_decomposition_check(
    double lambda, double c, double t, std::uint64_t samples,
    std::uint64_t seed) {
    if (samples < 10000)
        throw InvalidArgumentError("telegraph_decomposition_check: samples >= 10^4");
    const MotionSpec orth = orthogonal_motion_spec(lambda, c);
    const MotionSpec tel = telegraph_motion_spec(lambda / 2.0, c / 2.0);
    const std::vector<std::pair<double, double>> grid{
        {0.6, 0.0}, {0.0, 0.9}, {0.8, 0.8}, {1.2, -0.4}, {0.3, 1.5}, {1.0, 0.5}};

    TelegraphDecompositionReport report;
    for (const auto& [a, b] : grid) {
        const double ab[2] = {a, b};
        McEstimate direct = empirical_cf(orth, t, ab, samples, seed);
        // composed: offsets the stream ids so U, V draws are independent of
        // the direct simulation above
        McEstimate composed = detail::run_mc(
            samples, seed ^ 0x5bf0'3e8a'11d4'77c1ULL, [&](rng::Stream& stream) {
                MotionPath u = simulate_path(tel, t, stream);
                MotionPath v = simulate_path(tel, t, stream);
                double x = u.end_position[0] + v.end_position[0];
                double y = u.end_position[0] - v.end_position[0];
                double phase = a * x + b * y;
                return Complex(std::cos(phase), std::sin(phase));
            });
        double se = std::sqrt(direct.std_error() * direct.std_error() +
                              composed.std_error() * composed.std_error());
        double diff = std::abs(direct.value - composed.value);
        report.rows.push_back({a, b, direct.value, composed.value, se});
        report.max_abs_diff = std::max(report.max_abs_diff, diff);
        report.max_sigma_ratio = std::max(report.max_sigma_ratio, diff / se);
    }
    return report;
}

}  // namespace mlfrac
